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

#include "mlmc_qdrift/parallel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace mlmc_qdrift {

int resolve_thread_count(int requested) {
    if (requested < 0) {
        throw std::invalid_argument("thread count must be >= 0");
    }
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("MLMC_QDRIFT_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (*end != '\0' || value < 0) {
            throw std::invalid_argument(std::string("MLMC_QDRIFT_THREADS must be a nonnegative integer, got \"") +
                                        env + "\"");
        }
        if (value > 0) {
            return static_cast<int>(value);
        }
    }
    return omp_get_max_threads();
}

void set_thread_count(int requested) { omp_set_num_threads(resolve_thread_count(requested)); }

int thread_count() { return omp_get_max_threads(); }

double SampleSummary::standard_error() const {
    return n > 0 ? std::sqrt(variance / static_cast<double>(n)) : 0.0;
}

SampleSummary summarize(std::span<const double> values) {
    SampleSummary out;
    out.n = values.size();
    if (out.n == 0) {
        return out;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    out.mean = sum / static_cast<double>(out.n);
    if (out.n > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - out.mean) * (v - out.mean);
        }
        out.variance = ss / static_cast<double>(out.n - 1);
    }
    return out;
}

}  // namespace mlmc_qdrift
