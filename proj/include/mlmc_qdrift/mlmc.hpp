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
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mlmc_qdrift/qdrift.hpp"

namespace mlmc_qdrift {

/// Geometric level hierarchy N_l = N0 2^l, tau_l = lambda t / N_l, l = 0..L.
struct LevelHierarchy {
    std::size_t n0 = 0;
    std::size_t finest = 0;
    double lambda_t = 0.0;

    static LevelHierarchy make(const Hamiltonian& h, double t, std::size_t n0, std::size_t finest);

    std::size_t num_levels() const { return finest + 1; }
    std::uint64_t gate_count(std::size_t level) const;
    double tau(std::size_t level) const;
    /// K_l = N_{l-1}: number of coarse blocks in a level-l coupled sample.
    std::uint64_t coarse_blocks(std::size_t level) const;
    /// C_0 = N0, C_l = N_l + N_{l-1} = 3/2 N_l.
    std::uint64_t cost_per_sample(std::size_t level) const;
};

struct LevelStats {
    std::size_t level = 0;
    std::uint64_t gate_count = 0;  // N_l
    std::uint64_t n = 0;
    double mean = 0.0;
    double variance = 0.0;
    std::uint64_t cost_per_sample = 0;
};

struct AllocationPlan {
    double eps = 0.0;
    std::vector<std::uint64_t> n_per_level;
    double giles_sum = 0.0;              // S = sum_l sqrt(V_l C_l)
    double predicted_total_gates = 0.0;  // sum_l n_l C_l
    double variance_sum = 0.0;           // sum_l V_l / n_l, <= eps^2 / 2
};

/// Rate exponents and constants of the MLMC complexity model.
struct ComplexityModel {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double bias_constant = 0.0;      // B: |E[P_N] - P| <= B / N
    double variance_constant = 0.0;  // A: V_l <= A / N_l, identified with c1 N0 = 8 t^2 lambda^2
    double sigma2 = 0.0;             // single-sample variance of standard qDRIFT
    double c1 = 0.0;                 // 8 t^2 lambda^2 / N0
    double theorem_constant = 0.0;   // C1 = 64 t^2 lambda^2

    /// Worst-case model: B = 2 lambda^2 t^2 unless a fitted B is supplied (> 0).
    static ComplexityModel for_system(double t, double lambda, std::size_t n0, double sigma2,
                                      double fitted_bias_constant = 0.0);
};

/// Fine and coarse states of one index-sharing pair.
struct CoupledPaths {
    StateVector fine;
    StateVector coarse;
};

/// Fine path: all N_l indices at step tau_l. Coarse path: the odd-position
/// indices (1st, 3rd, ...) at step 2 tau_l.
CoupledPaths propagate_coupled(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                               const IndexSequence& seq, const StateVector& psi0);

struct CoupledSample {
    double fine = 0.0;
    double coarse = 0.0;
    double correction = 0.0;  // Y = fine - coarse
};

/// Exact pathwise expectations for a given sequence (length N_l).
CoupledSample coupled_sample(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                             const IndexSequence& seq, const StateVector& psi0, const Observable& obs);

/// Draws N_l indices from the stream and evaluates the pair. In SingleShot
/// mode the two outcomes share one uniform (maximal Bernoulli coupling).
CoupledSample coupled_sample(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                             const RngStream& stream, const StateVector& psi0, const Observable& obs,
                             Measurement measurement = Measurement::Expectation);

/// Y_0 = P_0 for level 0, the coupled correction otherwise.
double level_sample(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level, const RngStream& stream,
                    const StateVector& psi0, const Observable& obs, Measurement measurement);

/// c1 2^{-l} with c1 = 8 t^2 lambda^2 / N0.
double correction_variance_bound(std::size_t level, double t, double lambda, std::size_t n0);

/// n_l = ceil((2/eps^2) sqrt(V_l/C_l) S); levels with V_l = 0 get one sample.
AllocationPlan optimal_allocation(std::span<const double> variances, std::span<const double> costs, double eps);

/// L = max(0, ceil(log2(sqrt(2) B / (eps N0)))).
std::size_t choose_L(double eps, double bias_constant, std::size_t n0);

struct MlmcResult {
    double estimate = 0.0;
    std::vector<LevelStats> levels;
    std::uint64_t total_gates = 0;
    /// sum_l V^_l / n_l, the a-posteriori estimator variance.
    double estimator_variance = 0.0;
};

/// Y^ = (1/n_0) sum P_0 + sum_l (1/n_l) sum Y_l with independent streams per
/// (level, sample).
MlmcResult run_mlmc(const Hamiltonian& h, const Observable& obs, const StateVector& psi0,
                    const LevelHierarchy& hier, const AllocationPlan& plan, const RngStream& rng,
                    Measurement measurement = Measurement::Expectation, Execution exec = Execution::Parallel);

/// Unbiased sample variances of Y_l from n_pilot samples per level. Pilot
/// streams are disjoint from the ones run_mlmc uses.
std::vector<double> pilot_variances(const Hamiltonian& h, const Observable& obs, const StateVector& psi0,
                                    const LevelHierarchy& hier, std::size_t n_pilot, const RngStream& rng,
                                    Measurement measurement = Measurement::Expectation,
                                    Execution exec = Execution::Parallel);

/// V_0 unchanged; V_l = c1 2^{-l} for l >= 1.
std::vector<double> analytic_variances(double v0, const LevelHierarchy& hier, double t, double lambda);

std::vector<double> level_costs(const LevelHierarchy& hier);

/// 2 S^2 / eps^2.
double mlmc_cost(std::span<const double> variances, std::span<const double> costs, double eps);

/// sqrt(3A/2): uniform bound on sqrt(V_l C_l) for l >= 1 when V_l <= A / N_l.
double level_cost_bound(double variance_constant);

/// C1 eps^-2 log2^2(1/eps), C1 = 64 t^2 lambda^2. Valid for eps < 1/e.
double theorem_cost_bound(double t, double lambda, double eps);

/// Largest eps in [lo, hi] where speedup(eps) crosses 1 from below (as eps
/// decreases). Scans a descending log grid, then bisects on log eps.
struct CrossingSearch {
    bool found = false;
    double eps = 0.0;
};
CrossingSearch largest_crossing(const std::function<double(double)>& speedup, double lo, double hi,
                                std::size_t grid_points = 400);

struct CrossoverResult {
    bool found = false;
    double eps_star = 0.0;
    std::string regime;  // "overhead-dominated" | "log-dominated" | "none"
    double eps_overhead = 0.0;
    bool log_root_found = false;
    double log_root_x = 0.0;
    double eps_log = 0.0;
};

/// Solves C_std(eps) = C_MLMC(eps) for the constant-based model
///   C_std  = ceil(sqrt2 B/eps) ceil(2 sigma2/eps^2),
///   C_MLMC = 2 (sqrt(V0 N0) + L sqrt(kappa A))^2 / eps^2,  L = choose_L(eps),
/// where kappa = C_l / N_l (3/2 for coupled cost). The search is restricted to
/// the multilevel regime L >= 1. Also reports the overhead-dominated estimate
/// sqrt2 B sigma2 / (V0 N0) and the largest root of sigma2 N0 2^x = kappa A x^2.
CrossoverResult crossover_solve(double bias_constant, double sigma2, double variance_constant, std::size_t n0,
                                double v0, double cost_factor = 1.5, double eps_lo = 1e-8, double eps_hi = 1.0);

/// level,N_ell,n_ell,mean_Y,var_Y,cost_per_sample,cumulative_gates
void write_level_csv(std::ostream& out, const MlmcResult& result);

}  // namespace mlmc_qdrift
