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
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlmc_qdrift/hamiltonian.hpp"
#include "mlmc_qdrift/qdrift.hpp"

namespace mlmc_qdrift {

/// Malformed or inconsistent configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct HamiltonianSpec {
    std::string builder = "heisenberg_xyz";  // empty for explicit terms
    std::size_t n = 6;
    double jx = 1.0;
    double jy = 0.5;
    double jz = 0.8;
    std::vector<std::pair<double, std::string>> terms;

    Hamiltonian build() const;
};

struct Fig1Config {
    std::size_t levels = 7;  // l = 0..levels
};

struct Fig2Config {
    std::size_t level_min = 1;
    std::size_t level_max = 5;
    std::uint64_t samples_first = 300;
    std::uint64_t samples_last = 80;
    std::vector<std::uint64_t> samples;  // explicit schedule; overrides the linear one
    double c = 1.0;

    /// Per-level sample counts for level_min..level_max.
    std::vector<std::uint64_t> schedule() const;
};

enum class CorrectionCost { Fine, Coupled };
enum class VarianceSource { Model, Measured };

struct Fig3Config {
    std::size_t fit_level_min = 3;
    std::size_t fit_level_max = 7;
    double eps_min = 1e-5;
    double eps_max = 1e-1;
    std::size_t eps_points = 60;
    std::vector<double> report_eps{1e-2, 1e-3, 1e-4};
    CorrectionCost correction_cost = CorrectionCost::Fine;
    VarianceSource variance_source = VarianceSource::Model;
};

enum class VarianceMode { Pilot, Analytic };

struct MlmcConfig {
    double eps = 0.05;
    std::size_t n_pilot = 100;
    VarianceMode variance_mode = VarianceMode::Pilot;
    double bias_constant = 0.0;  // 0: worst-case 2 lambda^2 t^2
    std::optional<std::size_t> levels;  // L override
    Measurement measurement = Measurement::SingleShot;
};

struct QDriftRunConfig {
    std::size_t gate_count = 1024;
    std::size_t samples = 1000;
    Measurement measurement = Measurement::SingleShot;
};

struct ExperimentConfig {
    HamiltonianSpec hamiltonian;
    std::string observable = "ZIIIII";
    std::string initial_state = "000000";
    double t = 1.0;
    std::size_t n0 = 128;
    std::uint64_t seed = 42;
    int threads = 0;
    Fig1Config fig1;
    Fig2Config fig2;
    Fig3Config fig3;
    MlmcConfig mlmc;
    QDriftRunConfig qdrift;

    /// Throws ConfigError on inconsistent values.
    void validate() const;
    Observable make_observable() const;
    StateVector make_initial_state() const;
};

/// Parses a JSON document. Unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
/// Reads and parses a file; a missing file is a ConfigError naming the path.
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical JSON echo of the effective configuration.
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace mlmc_qdrift
