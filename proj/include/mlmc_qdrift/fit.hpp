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

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mlmc_qdrift {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<std::pair<double, double>> points;
    std::string label;
};

/// Ordinary least squares y = slope x + intercept. Needs >= 2 points with
/// distinct xs; throws std::invalid_argument otherwise.
FitResult slope_fit(std::span<const double> xs, std::span<const double> ys, std::string label = {});

/// Least squares with the slope held fixed: intercept = mean(y - slope x).
FitResult fixed_slope_fit(std::span<const double> xs, std::span<const double> ys, double slope,
                          std::string label = {});

struct BiasConstantFit {
    double c_p = 0.0;
    FitResult constrained;    // log|p_l - p_inf| vs -log N_l, slope 1
    FitResult unconstrained;  // same points, free slope
};

/// |p_l - p_inf| ~ c_p / N_l over the given levels (natural logs).
BiasConstantFit fit_bias_constant(std::span<const double> gate_counts, std::span<const double> probabilities,
                                  double p_inf);

}  // namespace mlmc_qdrift
