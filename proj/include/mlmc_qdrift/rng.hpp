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
#include <random>
#include <span>

namespace mlmc_qdrift {

std::uint64_t splitmix64(std::uint64_t x);

/// Names one reproducible random stream. (seed, stream_id) fully determines
/// the draws; streams are split hierarchically with derive().
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    /// Child stream for a sub-task (level, sample index, purpose tag, ...).
    RngStream derive(std::uint64_t tag) const;
};

/// Sequential generator over one stream. Only exactly-specified primitives
/// are used (mt19937_64 plus explicit bit-to-double conversion), so the
/// output is identical across platforms and standard libraries.
class RngEngine {
  public:
    explicit RngEngine(const RngStream& stream);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Inverse-CDF draw from a cumulative table whose last entry is 1.
    std::uint32_t draw_index(std::span<const double> cumulative);

  private:
    std::mt19937_64 engine_;
};

}  // namespace mlmc_qdrift
