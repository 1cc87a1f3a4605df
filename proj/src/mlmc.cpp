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

#include "mlmc_qdrift/mlmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace mlmc_qdrift {

namespace {

// Stream tags; pilot and production samples never share a stream.
constexpr std::uint64_t kProductionTag = 0x6d6c6d63;  // "mlmc"
constexpr std::uint64_t kPilotTag = 0x70696c6f;       // "pilo"

void require_level(const LevelHierarchy& hier, std::size_t level) {
    if (level > hier.finest) {
        throw std::out_of_range("level " + std::to_string(level) + " beyond finest level " +
                                std::to_string(hier.finest));
    }
}

}  // namespace

LevelHierarchy LevelHierarchy::make(const Hamiltonian& h, double t, std::size_t n0, std::size_t finest) {
    if (n0 == 0) {
        throw std::invalid_argument("N0 must be positive");
    }
    if (finest > 40) {
        throw std::invalid_argument("finest level too large");
    }
    return {n0, finest, h.one_norm() * t};
}

std::uint64_t LevelHierarchy::gate_count(std::size_t level) const { return std::uint64_t{n0} << level; }

double LevelHierarchy::tau(std::size_t level) const { return lambda_t / static_cast<double>(gate_count(level)); }

std::uint64_t LevelHierarchy::coarse_blocks(std::size_t level) const {
    if (level == 0) {
        throw std::invalid_argument("level 0 has no coarse partner");
    }
    return gate_count(level - 1);
}

std::uint64_t LevelHierarchy::cost_per_sample(std::size_t level) const {
    return level == 0 ? gate_count(0) : gate_count(level) + gate_count(level - 1);
}

ComplexityModel ComplexityModel::for_system(double t, double lambda, std::size_t n0, double sigma2,
                                            double fitted_bias_constant) {
    ComplexityModel m;
    const double lt2 = t * t * lambda * lambda;
    m.bias_constant = fitted_bias_constant > 0.0 ? fitted_bias_constant : 2.0 * lt2;
    m.c1 = 8.0 * lt2 / static_cast<double>(n0);
    m.variance_constant = m.c1 * static_cast<double>(n0);
    m.sigma2 = sigma2;
    m.theorem_constant = 64.0 * lt2;
    return m;
}

CoupledPaths propagate_coupled(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                               const IndexSequence& seq, const StateVector& psi0) {
    if (level == 0) {
        throw std::invalid_argument("coupled sampling needs level >= 1; use the single-level sampler at level 0");
    }
    require_level(hier, level);
    if (seq.size() != hier.gate_count(level)) {
        throw std::invalid_argument("coupled sequence length " + std::to_string(seq.size()) + " != N_l = " +
                                    std::to_string(hier.gate_count(level)));
    }
    const double tau = hier.tau(level);
    CoupledPaths paths{psi0, psi0};
    auto fine = paths.fine.amplitudes();
    auto coarse = paths.coarse.amplitudes();
    for (std::size_t k = 0; k < seq.size(); k += 2) {
        const std::uint32_t a = seq.indices[k];
        const std::uint32_t b = seq.indices[k + 1];
        if (a >= h.num_terms() || b >= h.num_terms()) {
            throw std::out_of_range("term index out of range in coupled sequence");
        }
        apply_exp_pauli_inplace(h.term(a).pauli, h.sign(a) * tau, fine);
        apply_exp_pauli_inplace(h.term(b).pauli, h.sign(b) * tau, fine);
        apply_exp_pauli_inplace(h.term(a).pauli, h.sign(a) * 2.0 * tau, coarse);
    }
    return paths;
}

CoupledSample coupled_sample(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                             const IndexSequence& seq, const StateVector& psi0, const Observable& obs) {
    const CoupledPaths paths = propagate_coupled(h, hier, level, seq, psi0);
    CoupledSample out;
    out.fine = expectation(obs, paths.fine);
    out.coarse = expectation(obs, paths.coarse);
    out.correction = out.fine - out.coarse;
    return out;
}

CoupledSample coupled_sample(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                             const RngStream& stream, const StateVector& psi0, const Observable& obs,
                             Measurement measurement) {
    if (level == 0) {
        throw std::invalid_argument("coupled sampling needs level >= 1; use the single-level sampler at level 0");
    }
    require_level(hier, level);
    RngEngine rng(stream);
    const IndexSequence seq = sample_sequence(rng, h, hier.gate_count(level));
    CoupledSample out = coupled_sample(h, hier, level, seq, psi0, obs);
    if (measurement == Measurement::SingleShot) {
        const double u = rng.uniform();
        out.fine = u < 0.5 * (1.0 + out.fine) ? 1.0 : -1.0;
        out.coarse = u < 0.5 * (1.0 + out.coarse) ? 1.0 : -1.0;
        out.correction = out.fine - out.coarse;
    }
    return out;
}

double level_sample(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level, const RngStream& stream,
                    const StateVector& psi0, const Observable& obs, Measurement measurement) {
    require_level(hier, level);
    if (level == 0) {
        return qdrift_sample(h, obs, psi0, hier.gate_count(0), hier.tau(0), stream, measurement);
    }
    return coupled_sample(h, hier, level, stream, psi0, obs, measurement).correction;
}

double correction_variance_bound(std::size_t level, double t, double lambda, std::size_t n0) {
    if (n0 == 0) {
        throw std::invalid_argument("N0 must be positive");
    }
    const double c1 = 8.0 * t * t * lambda * lambda / static_cast<double>(n0);
    return std::ldexp(c1, -static_cast<int>(level));
}

AllocationPlan optimal_allocation(std::span<const double> variances, std::span<const double> costs, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("optimal_allocation: eps must be positive");
    }
    if (variances.size() != costs.size() || variances.empty()) {
        throw std::invalid_argument("optimal_allocation: variance and cost lists must be nonempty and match");
    }
    for (std::size_t l = 0; l < variances.size(); ++l) {
        if (!(variances[l] >= 0.0) || !(costs[l] > 0.0)) {
            throw std::invalid_argument("optimal_allocation: need V_l >= 0 and C_l > 0");
        }
    }
    AllocationPlan plan;
    plan.eps = eps;
    for (std::size_t l = 0; l < variances.size(); ++l) {
        plan.giles_sum += std::sqrt(variances[l] * costs[l]);
    }
    const double scale = 2.0 / (eps * eps) * plan.giles_sum;
    plan.n_per_level.resize(variances.size());
    for (std::size_t l = 0; l < variances.size(); ++l) {
        double n = variances[l] > 0.0 ? std::ceil(scale * std::sqrt(variances[l] / costs[l])) : 1.0;
        if (!(n < 0x1.0p63)) {
            throw std::overflow_error("optimal_allocation: sample count overflows 64 bits");
        }
        plan.n_per_level[l] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
    }
    const double budget = 0.5 * eps * eps;
    auto variance_sum = [&] {
        double s = 0.0;
        for (std::size_t l = 0; l < variances.size(); ++l) {
            s += variances[l] / static_cast<double>(plan.n_per_level[l]);
        }
        return s;
    };
    plan.variance_sum = variance_sum();
    // Ceiling guarantees feasibility in exact arithmetic; absorb rounding here.
    while (plan.variance_sum > budget) {
        std::size_t worst = 0;
        for (std::size_t l = 1; l < variances.size(); ++l) {
            if (variances[l] / static_cast<double>(plan.n_per_level[l]) >
                variances[worst] / static_cast<double>(plan.n_per_level[worst])) {
                worst = l;
            }
        }
        plan.n_per_level[worst] += 1 + plan.n_per_level[worst] / 1000000;
        plan.variance_sum = variance_sum();
    }
    for (std::size_t l = 0; l < variances.size(); ++l) {
        plan.predicted_total_gates += static_cast<double>(plan.n_per_level[l]) * costs[l];
    }
    return plan;
}

std::size_t choose_L(double eps, double bias_constant, std::size_t n0) {
    if (!(eps > 0.0) || !(bias_constant > 0.0) || n0 == 0) {
        throw std::invalid_argument("choose_L: eps, B and N0 must be positive");
    }
    const double x = std::log2(std::sqrt(2.0) * bias_constant / (eps * static_cast<double>(n0)));
    const double level = std::ceil(x);
    return level > 0.0 ? static_cast<std::size_t>(level) : 0;
}

MlmcResult run_mlmc(const Hamiltonian& h, const Observable& obs, const StateVector& psi0,
                    const LevelHierarchy& hier, const AllocationPlan& plan, const RngStream& rng,
                    Measurement measurement, Execution exec) {
    if (plan.n_per_level.size() != hier.num_levels()) {
        throw std::invalid_argument("run_mlmc: plan has " + std::to_string(plan.n_per_level.size()) +
                                    " levels, hierarchy has " + std::to_string(hier.num_levels()));
    }
    MlmcResult out;
    const RngStream production = rng.derive(kProductionTag);
    for (std::size_t level = 0; level < hier.num_levels(); ++level) {
        const std::uint64_t n = plan.n_per_level[level];
        const RngStream level_stream = production.derive(level);
        std::vector<double> values(n);
        for_each_index(exec, n, [&](std::size_t i) {
            values[i] = level_sample(h, hier, level, level_stream.derive(i), psi0, obs, measurement);
        });
        const SampleSummary summary = summarize(values);
        LevelStats stats;
        stats.level = level;
        stats.gate_count = hier.gate_count(level);
        stats.n = n;
        stats.mean = summary.mean;
        stats.variance = summary.variance;
        stats.cost_per_sample = hier.cost_per_sample(level);
        out.estimate += summary.mean;
        out.estimator_variance += summary.variance / static_cast<double>(n);
        out.total_gates += n * stats.cost_per_sample;
        out.levels.push_back(stats);
    }
    return out;
}

std::vector<double> pilot_variances(const Hamiltonian& h, const Observable& obs, const StateVector& psi0,
                                    const LevelHierarchy& hier, std::size_t n_pilot, const RngStream& rng,
                                    Measurement measurement, Execution exec) {
    if (n_pilot < 2) {
        throw std::invalid_argument("pilot_variances: n_pilot must be >= 2");
    }
    const RngStream pilot = rng.derive(kPilotTag);
    std::vector<double> out;
    out.reserve(hier.num_levels());
    for (std::size_t level = 0; level < hier.num_levels(); ++level) {
        const RngStream level_stream = pilot.derive(level);
        std::vector<double> values(n_pilot);
        for_each_index(exec, n_pilot, [&](std::size_t i) {
            values[i] = level_sample(h, hier, level, level_stream.derive(i), psi0, obs, measurement);
        });
        out.push_back(summarize(values).variance);
    }
    return out;
}

std::vector<double> analytic_variances(double v0, const LevelHierarchy& hier, double t, double lambda) {
    std::vector<double> out{v0};
    for (std::size_t level = 1; level < hier.num_levels(); ++level) {
        out.push_back(correction_variance_bound(level, t, lambda, hier.n0));
    }
    return out;
}

std::vector<double> level_costs(const LevelHierarchy& hier) {
    std::vector<double> out;
    for (std::size_t level = 0; level < hier.num_levels(); ++level) {
        out.push_back(static_cast<double>(hier.cost_per_sample(level)));
    }
    return out;
}

double mlmc_cost(std::span<const double> variances, std::span<const double> costs, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("mlmc_cost: eps must be positive");
    }
    if (variances.size() != costs.size()) {
        throw std::invalid_argument("mlmc_cost: variance and cost lists differ in length");
    }
    double s = 0.0;
    for (std::size_t l = 0; l < variances.size(); ++l) {
        s += std::sqrt(variances[l] * costs[l]);
    }
    return 2.0 * s * s / (eps * eps);
}

double level_cost_bound(double variance_constant) { return std::sqrt(1.5 * variance_constant); }

double theorem_cost_bound(double t, double lambda, double eps) {
    if (!(eps > 0.0) || !(eps < std::exp(-1.0))) {
        throw std::domain_error("theorem_cost_bound: requires 0 < eps < 1/e");
    }
    const double log_term = std::log2(1.0 / eps);
    return 64.0 * t * t * lambda * lambda * log_term * log_term / (eps * eps);
}

CrossingSearch largest_crossing(const std::function<double(double)>& speedup, double lo, double hi,
                                std::size_t grid_points) {
    if (!(lo > 0.0) || !(hi > lo) || grid_points < 2) {
        throw std::invalid_argument("largest_crossing: need 0 < lo < hi and >= 2 grid points");
    }
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    auto grid = [&](std::size_t k) {
        return std::exp(log_hi + (log_lo - log_hi) * static_cast<double>(k) / static_cast<double>(grid_points - 1));
    };
    if (speedup(grid(0)) >= 1.0) {
        return {};
    }
    for (std::size_t k = 1; k < grid_points; ++k) {
        if (speedup(grid(k)) >= 1.0) {
            double above = std::log(grid(k - 1));  // speedup < 1
            double below = std::log(grid(k));      // speedup >= 1
            for (int it = 0; it < 200 && above - below > 1e-13; ++it) {
                const double mid = 0.5 * (above + below);
                (speedup(std::exp(mid)) >= 1.0 ? below : above) = mid;
            }
            return {true, std::exp(0.5 * (above + below))};
        }
    }
    return {};
}

CrossoverResult crossover_solve(double bias_constant, double sigma2, double variance_constant, std::size_t n0,
                                double v0, double cost_factor, double eps_lo, double eps_hi) {
    if (!(bias_constant > 0.0) || !(sigma2 > 0.0) || !(variance_constant > 0.0) || n0 == 0 || !(v0 > 0.0) ||
        !(cost_factor > 0.0)) {
        throw std::invalid_argument("crossover_solve: all constants must be positive");
    }
    const double n0d = static_cast<double>(n0);
    const double base_term = std::sqrt(v0 * n0d);
    const double level_term = std::sqrt(cost_factor * variance_constant);
    auto speedup = [&](double eps) {
        const double standard = std_cost(eps, bias_constant, sigma2).total_gates;
        const double s = base_term + static_cast<double>(choose_L(eps, bias_constant, n0)) * level_term;
        return standard / (2.0 * s * s / (eps * eps));
    };

    CrossoverResult out;
    out.eps_overhead = std::sqrt(2.0) * bias_constant * sigma2 / (v0 * n0d);

    // L >= 1 requires eps < sqrt2 B / N0.
    const double multilevel_hi = std::min(eps_hi, std::sqrt(2.0) * bias_constant / n0d * (1.0 - 1e-12));
    if (multilevel_hi > eps_lo) {
        const CrossingSearch hit = largest_crossing(speedup, eps_lo, multilevel_hi, 800);
        out.found = hit.found;
        out.eps_star = hit.eps;
    }
    if (out.found) {
        const double levels = static_cast<double>(choose_L(out.eps_star, bias_constant, n0));
        out.regime = base_term >= levels * level_term ? "overhead-dominated" : "log-dominated";
    } else {
        out.regime = "none";
    }

    // Largest positive root of g(x) = sigma2 N0 2^x - kappa A x^2 (g -> +inf).
    auto g = [&](double x) { return sigma2 * n0d * std::exp2(x) - cost_factor * variance_constant * x * x; };
    double last_negative = -1.0;
    for (double x = 0.0; x <= 200.0; x += 0.01) {
        if (g(x) < 0.0) {
            last_negative = x;
        }
    }
    if (last_negative >= 0.0) {
        double neg = last_negative;
        double pos = last_negative + 0.01;
        for (int it = 0; it < 200 && pos - neg > 1e-14; ++it) {
            const double mid = 0.5 * (neg + pos);
            (g(mid) < 0.0 ? neg : pos) = mid;
        }
        out.log_root_found = true;
        out.log_root_x = 0.5 * (neg + pos);
        out.eps_log = std::sqrt(2.0) * bias_constant / (n0d * std::exp2(out.log_root_x));
    }
    return out;
}

void write_level_csv(std::ostream& out, const MlmcResult& result) {
    out << "level,N_ell,n_ell,mean_Y,var_Y,cost_per_sample,cumulative_gates\n";
    std::uint64_t cumulative = 0;
    for (const LevelStats& s : result.levels) {
        cumulative += s.n * s.cost_per_sample;
        fmt::print(out, "{},{},{},{:.17g},{:.17g},{},{}\n", s.level, s.gate_count, s.n, s.mean, s.variance,
                   s.cost_per_sample, cumulative);
    }
}

}  // namespace mlmc_qdrift
