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

#include "mlmc_qdrift/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace mlmc_qdrift {

namespace {

void check_points(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("fit: xs and ys differ in length");
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("fit: need at least 2 points, got " + std::to_string(xs.size()));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            throw std::invalid_argument("fit: non-finite point at index " + std::to_string(i));
        }
    }
}

std::vector<std::pair<double, double>> zip(std::span<const double> xs, std::span<const double> ys) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.emplace_back(xs[i], ys[i]);
    }
    return out;
}

}  // namespace

FitResult slope_fit(std::span<const double> xs, std::span<const double> ys, std::string label) {
    check_points(xs, ys);
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("fit: degenerate xs (all equal)");
    }
    FitResult out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.points = zip(xs, ys);
    out.label = std::move(label);
    return out;
}

FitResult fixed_slope_fit(std::span<const double> xs, std::span<const double> ys, double slope, std::string label) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw std::invalid_argument("fit: need matching, nonempty xs and ys");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += ys[i] - slope * xs[i];
    }
    FitResult out;
    out.slope = slope;
    out.intercept = s / static_cast<double>(xs.size());
    out.points = zip(xs, ys);
    out.label = std::move(label);
    return out;
}

BiasConstantFit fit_bias_constant(std::span<const double> gate_counts, std::span<const double> probabilities,
                                  double p_inf) {
    if (gate_counts.size() != probabilities.size()) {
        throw std::invalid_argument("fit_bias_constant: length mismatch");
    }
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < gate_counts.size(); ++i) {
        const double gap = std::abs(probabilities[i] - p_inf);
        if (gap > 0.0 && gate_counts[i] > 0.0) {
            xs.push_back(-std::log(gate_counts[i]));
            ys.push_back(std::log(gap));
        }
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("fit_bias_constant: fewer than 2 usable levels");
    }
    BiasConstantFit out;
    out.constrained = fixed_slope_fit(xs, ys, 1.0, "log|p-p_inf| vs -log N, slope 1");
    out.unconstrained = slope_fit(xs, ys, "log|p-p_inf| vs -log N, free slope");
    out.c_p = std::exp(out.constrained.intercept);
    return out;
}

}  // namespace mlmc_qdrift
