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

#include <cstddef>
#include <cstdint>
#include <span>

namespace mlmc_qdrift {

/// Every kernel that loops over samples or matrix rows comes in two flavours:
/// the OpenMP one used in production and a plain loop kept as the reference.
/// Both write per-index results into caller buffers and reduce sequentially,
/// so they agree bit for bit for any thread count.
enum class Execution { Serial, Parallel };

/// Resolves a --threads style request: >0 is used as is, 0 falls back to the
/// MLMC_QDRIFT_THREADS environment variable and then to the OpenMP default.
int resolve_thread_count(int requested);

/// Applies resolve_thread_count() to the OpenMP runtime.
void set_thread_count(int requested);
int thread_count();

/// fn(i) for i in [0, n). Iterations must only write index-owned state.
template <class Fn>
void for_each_index(Execution exec, std::size_t n, Fn&& fn) {
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        fn(static_cast<std::size_t>(i));
    }
}

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    /// Unbiased (n - 1) sample variance; 0 when n < 2.
    double variance = 0.0;

    double standard_error() const;
};

/// Two-pass mean/variance in index order.
SampleSummary summarize(std::span<const double> values);

}  // namespace mlmc_qdrift
