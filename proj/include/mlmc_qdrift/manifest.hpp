// Copyright 2026 The mlmc-qdrift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace mlmc_qdrift {

struct RunManifest {
    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    std::string config_hash;  // git blob SHA-1 of the config bytes
    std::string output_dir;
    int threads = 0;
    double duration_seconds = 0.0;

    std::string to_json() const;
    void write(const std::filesystem::path& path) const;
};

/// SHA-1 over "blob <size>\0<content>", as `git hash-object` computes it.
std::string git_blob_sha1(const std::string& content);
std::string git_blob_sha1_file(const std::filesystem::path& path);

}  // namespace mlmc_qdrift
