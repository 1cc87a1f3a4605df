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
#include <iosfwd>
#include <string>
#include <vector>

#include "mlmc_qdrift/augmented.hpp"
#include "mlmc_qdrift/config.hpp"
#include "mlmc_qdrift/fit.hpp"
#include "mlmc_qdrift/mlmc.hpp"

namespace mlmc_qdrift {

struct BernoulliStats {
    double var_fine = 0.0;   // 4 p_f (1 - p_f)
    double mean_fine = 0.0;  // |2 p_f - 1|
    double var_diff = 0.0;   // 4 D (1 - D), D = |p_f - p_c|
    double mean_diff = 0.0;  // 2 D
};

/// Outcome statistics of +-1 measurements with P(+1) = p, the pair maximally
/// coupled. Throws std::invalid_argument for p outside [0, 1].
BernoulliStats bernoulli_stats(double p_fine, double p_coarse);

/// Reference values from dense exact evolution.
struct ExactReference {
    double expectation = 0.0;  // <O> at time t
    double p_inf = 0.0;        // (1 + <O>) / 2
};
ExactReference exact_reference(const ExperimentConfig& cfg);

// ---- variance / mean decay ----

struct Fig1Row {
    std::size_t level = 0;
    std::uint64_t gate_count = 0;
    double p = 0.0;
    BernoulliStats stats;  // var_diff / mean_diff are NaN at level 0
};

struct Fig1Result {
    std::vector<Fig1Row> rows;
    ExactReference exact;
    FitResult variance_fit;  // log2 var_diff vs level, levels >= 1
    FitResult mean_fit;      // log2 mean_diff vs level
    double beta_hat = 0.0;   // -variance_fit.slope
    double alpha_hat = 0.0;  // -mean_fit.slope
    bool monotone_tail = true;  // p_l approaches p_inf monotonically for l >= 3
    std::vector<std::string> warnings;
};

/// Probabilities p_l = (1 + Tr(O E^{N_l}(rho0))) / 2 from the averaged channel
/// for l = 0..levels, then Bernoulli statistics and slope fits.
Fig1Result run_fig1(const ExperimentConfig& cfg, Execution exec = Execution::Parallel);

/// Rebuilds statistics and fits from (level, N, p) triples, e.g. a fig1.csv.
Fig1Result fig1_from_probabilities(const std::vector<Fig1Row>& rows, const ExactReference& exact);

/// level,N,p,var_fine,mean_fine,var_diff,mean_diff
void write_fig1_csv(std::ostream& out, const Fig1Result& result);
/// Parses the level, N and p columns of a fig1.csv by header name.
std::vector<Fig1Row> read_fig1_csv(std::istream& in);

// ---- shot-noise variance ----

struct Fig2Row {
    std::size_t level = 0;
    std::uint64_t gate_count = 0;
    double tau = 0.0;
    double zeta = 0.0;
    std::uint64_t n_samples = 0;
    SampleSummary var_shot;          // per-path Var_shot
    SampleSummary worst_case;        // S^2 ||O^||^2
    SampleSummary error_norm;        // ||e||
    SampleSummary error_over_tau;    // ||e|| / tau
    SampleSummary squared_norm;      // S
    std::uint64_t clamped = 0;
};

struct Fig2Result {
    std::vector<Fig2Row> rows;
    FitResult fit;  // log2 mean Var_shot vs level
    double beta_shot_hat = 0.0;
    FitResult error_fit;  // log2 mean ||e|| vs level
};

Fig2Result run_fig2(const ExperimentConfig& cfg, std::uint64_t seed, Execution exec = Execution::Parallel);

/// level,N,tau,zeta,n_samples,mean_var_shot,stderr_var_shot
void write_fig2_csv(std::ostream& out, const Fig2Result& result);

// ---- gate complexity ----

struct Fig3Row {
    double eps = 0.0;
    std::size_t levels = 0;  // L
    double std_gates = 0.0;
    double mlmc_gates = 0.0;
    double speedup = 0.0;
    double sigma2 = 0.0;
};

struct Fig3Model {
    double c_p = 0.0;
    double bias_constant = 0.0;  // B = 2 c_p
    double p_inf = 0.0;
    std::size_t n0 = 0;
    CorrectionCost correction_cost = CorrectionCost::Fine;
    VarianceSource variance_source = VarianceSource::Model;
    /// Measured 4D(1-D) for levels 1.. from fig1, used by VarianceSource::Measured.
    std::vector<double> measured_var_diff;
    double p0 = 0.0;  // level-0 probability

    /// sigma^2 = 4 p (1 - p), p = p_inf - c_p / N_L.
    double sigma2(std::size_t levels) const;
    /// V_0 .. V_L; the same vector feeds optimal_allocation and the cost column.
    std::vector<double> variances(std::size_t levels) const;
    std::vector<double> costs(std::size_t levels) const;
    Fig3Row evaluate(double eps) const;
};

struct SpeedupReport {
    double eps = 0.0;
    Fig3Row row;
    std::uint64_t allocation_gates = 0;  // sum n_l C_l after integer allocation
};

struct Fig3Result {
    BiasConstantFit c_p_fit;
    Fig3Model model;
    std::vector<Fig3Row> rows;
    CrossingSearch crossover;
    std::vector<SpeedupReport> reports;
    double sigma2_inf = 0.0;  // 4 p_inf (1 - p_inf)
    // Same pipeline with C_l = N_l + N_{l-1}.
    CrossingSearch crossover_coupled;
    std::vector<SpeedupReport> reports_coupled;
    CrossoverResult constant_model;  // crossover_solve with A = 4 c_p
};

Fig3Model make_fig3_model(const ExperimentConfig& cfg, const Fig1Result& fig1, const BiasConstantFit& fit);
Fig3Result run_fig3(const ExperimentConfig& cfg, const Fig1Result& fig1);

/// eps,L,std_gates,mlmc_gates,speedup
void write_fig3_csv(std::ostream& out, const Fig3Result& result);

// ---- end-to-end estimators ----

struct MlmcPipelineResult {
    LevelHierarchy hierarchy;
    double bias_constant = 0.0;
    std::vector<double> variances;
    std::vector<double> costs;
    AllocationPlan plan;
    MlmcResult result;
    ExactReference exact;
};

MlmcPipelineResult run_mlmc_pipeline(const ExperimentConfig& cfg, std::uint64_t seed,
                                     Execution exec = Execution::Parallel);

struct QDriftPipelineResult {
    QDriftRun run;
    ExactReference exact;
    double bias_bound = 0.0;
};

QDriftPipelineResult run_qdrift_pipeline(const ExperimentConfig& cfg, std::uint64_t seed,
                                         Execution exec = Execution::Parallel);

// ---- JSON summaries ----

std::string fig1_summary_json(const Fig1Result& r);
std::string fig2_summary_json(const Fig2Result& r, std::uint64_t seed);
std::string fig3_summary_json(const Fig3Result& r);
std::string mlmc_summary_json(const MlmcPipelineResult& r, std::uint64_t seed);
std::string qdrift_summary_json(const QDriftPipelineResult& r, std::uint64_t seed);

/// Merges the object `fragment` into the JSON object stored at `path`
/// (created if absent) and adds the config echo.
void merge_summary(const std::filesystem::path& path, const std::string& fragment, const ExperimentConfig& cfg);

}  // namespace mlmc_qdrift
