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

#include "mlmc_qdrift/rng.hpp"

#include <algorithm>

namespace mlmc_qdrift {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t tag) const {
    return {seed, splitmix64(stream_id ^ splitmix64(tag + 0x632be59bd9b4e019ULL))};
}

RngEngine::RngEngine(const RngStream& stream)
    : engine_(splitmix64(stream.seed) ^ splitmix64(stream.stream_id ^ 0xd1b54a32d192ed03ULL)) {
    // mt19937_64 seeded from one word has correlated early output for nearby
    // seeds; burn a short prefix.
    engine_.discard(64);
}

std::uint32_t RngEngine::draw_index(std::span<const double> cumulative) {
    const double u = uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
        --it;
    }
    return static_cast<std::uint32_t>(it - cumulative.begin());
}

}  // namespace mlmc_qdrift
