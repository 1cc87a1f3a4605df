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


// One PASS/FAIL line per primary acceptance criterion; exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mlmc_qdrift/augmented.hpp"
#include "mlmc_qdrift/config.hpp"
#include "mlmc_qdrift/experiments.hpp"
#include "oracles.hpp"

namespace mq = mlmc_qdrift;

namespace {

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(const std::string& name, bool ok, const std::string& detail, const Timer& timer, double budget) {
    const double s = timer.seconds();
    const bool in_time = s <= budget;
    if (!ok || !in_time) ++g_failures;
    fmt::print("{} {}: {} [{:.1f}s / {:.0f}s budget]\n", ok && in_time ? "PASS" : "FAIL", name, detail, s, budget);
    std::fflush(stdout);
}

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

void exactness_anchors() {
    Timer t;
    const auto h = mq::build_heisenberg_xyz(6, 1.0, 0.5, 0.8);
    const auto psi = mq::exact_evolution(h, 1.0, mq::StateVector::from_bits("000000"));
    const double z0 = mq::expectation(mq::Observable(mq::PauliString::from_text("ZIIIII")), psi);
    const double p_inf = 0.5 * (1.0 + z0);
    const bool ok = h.num_terms() == 15 && h.one_norm() == 11.5 && std::abs(z0 - 0.5024) <= 5e-4 &&
                    std::abs(p_inf - 0.7512) <= 5e-4;
    report("exactness-anchors", ok,
           fmt::format("M={} lambda={} <Z0>={:.6f} p_inf={:.6f}", h.num_terms(), h.one_norm(), z0, p_inf), t, 1.0);
}

void oracle_suite() {
    Timer t;
    oracle::Gen gen(20260101);

    double exp_err = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const std::string& s : oracle::all_paulis(n, true)) {
            const auto p = mq::PauliString::from_text(s);
            for (int k = 0; k < 100; ++k) {
                const double theta = gen.uniform(-4.0, 4.0);
                const auto psi = gen.state(n);
                const auto out = mq::apply_exp_pauli(p, theta, psi);
                exp_err = std::max(exp_err,
                                   oracle::max_abs(oracle::to_vec(out), oracle::expm_pauli(s, theta) * oracle::to_vec(psi)));
            }
        }
    }

    const mq::Hamiltonian toy({{0.9, mq::PauliString::from_text("XY")}, {-0.6, mq::PauliString::from_text("ZX")}});
    double channel_err = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const double time = 0.8;
        const double tau = toy.one_norm() * time / static_cast<double>(n);
        const Eigen::MatrixXcd rho0 = gen.density(2);
        const auto got = mq::iterate_channel(toy, time, n, mq::DensityMatrix::from_eigen(2, rho0));
        channel_err = std::max(channel_err, oracle::max_abs(got.to_eigen(), oracle::enumerated_channel(toy, n, tau, rho0)));
    }

    // Telescoping with N0 = 1, L = 1.
    const mq::Observable zi(mq::PauliString::from_text("ZI"));
    const auto psi00 = mq::StateVector::from_bits("00");
    const auto hier_toy = mq::LevelHierarchy::make(toy, 0.8, 1, 1);
    double e0 = 0.0, e1 = 0.0;
    oracle::enumerate_sequences(toy, 1, [&](const std::vector<std::uint32_t>& seq, double p) {
        e0 += p * mq::expectation(zi, mq::run_trajectory(toy, mq::IndexSequence{seq}, hier_toy.tau(0), psi00));
    });
    oracle::enumerate_sequences(toy, 2, [&](const std::vector<std::uint32_t>& seq, double p) {
        e1 += p * mq::coupled_sample(toy, hier_toy, 1, mq::IndexSequence{seq}, psi00, zi).correction;
    });
    const double target = mq::expectation(zi, mq::iterate_channel(toy, 0.8, 2, mq::DensityMatrix::from_pure(psi00)));
    const double tele_err = std::abs(e0 + e1 - target);

    // Pathwise augmented identity and zeta-invariance.
    const auto h = mq::build_heisenberg_xyz(6, 1.0, 0.5, 0.8);
    const mq::Observable z0(mq::PauliString::from_text("ZIIIII"));
    const auto psi0 = mq::StateVector::from_bits("000000");
    const auto hier = mq::LevelHierarchy::make(h, 1.0, 128, 5);
    double path_err = 0.0, zeta_err = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const std::size_t level = 1 + i % 5;
        const auto seq = mq::sample_sequence(mq::RngStream{31337, i}, h, hier.gate_count(level));
        const double y = mq::coupled_sample(h, hier, level, seq, psi0, z0).correction;
        const double b1 = mq::block_expectation(mq::evolve_augmented(h, hier, level, seq, psi0, 1.0), z0);
        path_err = std::max(path_err, std::abs(b1 - y));
        for (double c : {0.5, 2.0}) {
            const double bc = mq::block_expectation(mq::evolve_augmented(h, hier, level, seq, psi0, c), z0);
            zeta_err = std::max(zeta_err, std::abs(bc - b1));
        }
    }

    double gen_err = 0.0;
    const auto two = oracle::all_paulis(2, false);
    for (int k = 0; k < 200; ++k) {
        const auto a = mq::PauliString::from_text(two[gen.index(two.size())]);
        const auto b = mq::PauliString::from_text(two[gen.index(two.size())]);
        const double tau = gen.uniform(1e-3, 0.3);
        const auto g = mq::block_generator_norms(a, b, tau, 1.0 / std::sqrt(tau), gen.index(2) ? 1.0 : -1.0,
                                                 gen.index(2) ? 1.0 : -1.0);
        gen_err = std::max(gen_err, g.reconstruction_error);
    }

    const bool ok = exp_err <= 1e-10 && channel_err <= 1e-12 && tele_err <= 1e-12 && path_err <= 1e-10 &&
                    zeta_err <= 1e-12 && gen_err <= 1e-12;
    report("oracle-suite", ok,
           fmt::format("exp={:.1e} channel={:.1e} telescoping={:.1e} pathwise={:.1e} zeta={:.1e} generator={:.1e}",
                       exp_err, channel_err, tele_err, path_err, zeta_err, gen_err),
           t, 30.0);
}

mq::Fig1Result figure1(const mq::ExperimentConfig& cfg) {
    Timer t;
    const auto r = mq::run_fig1(cfg);
    const double vf = r.rows.back().stats.var_fine;
    const bool ok = cfg.n0 == 128 && r.rows.size() == 8 && within(r.beta_hat, 0.80, 1.05) &&
                    within(r.alpha_hat, 0.80, 1.05) && std::abs(vf - 0.748) <= 0.01;
    report("figure-1", ok, fmt::format("beta={:.4f} alpha={:.4f} var_fine(7)={:.5f}", r.beta_hat, r.alpha_hat, vf), t,
           300.0);
    return r;
}

void figure2(const mq::ExperimentConfig& cfg) {
    Timer t;
    const auto r = mq::run_fig2(cfg, cfg.seed);
    report("figure-2", within(r.beta_shot_hat, 0.85, 1.15),
           fmt::format("beta_shot={:.4f} (seed {}, levels {}..{})", r.beta_shot_hat, cfg.seed, cfg.fig2.level_min,
                       cfg.fig2.level_max),
           t, 120.0);
}

void figure3(const mq::ExperimentConfig& cfg, const mq::Fig1Result& fig1) {
    Timer t;
    const auto r = mq::run_fig3(cfg, fig1);
    const double targets[] = {1.2, 5.7, 28.0};
    const double eps[] = {1e-2, 1e-3, 1e-4};
    bool ok = within(r.c_p_fit.c_p, 8.0, 13.0) && r.crossover.found && within(r.crossover.eps, 0.01, 0.04);
    std::string speedups;
    for (int k = 0; k < 3; ++k) {
        const double s = r.model.evaluate(eps[k]).speedup;
        ok = ok && std::abs(s / targets[k] - 1.0) <= 0.30;
        speedups += fmt::format(" {:.3f}", s);
    }
    report("figure-3", ok,
           fmt::format("c_p={:.4f} eps*={:.4f} speedups{}", r.c_p_fit.c_p, r.crossover.found ? r.crossover.eps : 0.0,
                       speedups),
           t, 60.0);
}

void allocation_feasibility() {
    Timer t;
    oracle::Gen gen(777);
    int bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t levels = 1 + gen.index(12);
        std::vector<double> v, c;
        for (std::size_t l = 0; l < levels; ++l) {
            v.push_back(std::exp(gen.uniform(-14.0, 2.0)));
            c.push_back(std::exp(gen.uniform(0.0, 14.0)));
        }
        const double eps = std::exp(gen.uniform(-9.0, 0.0));
        const auto plan = mq::optimal_allocation(v, c, eps);
        double sum = 0.0;
        for (std::size_t l = 0; l < levels; ++l) sum += v[l] / static_cast<double>(plan.n_per_level[l]);
        if (!(sum <= 0.5 * eps * eps)) ++bad;
    }
    report("allocation-feasibility", bad == 0, fmt::format("{} of 200 instances violate the budget", bad), t, 5.0);
}

void variance_bound() {
    Timer t;
    const auto h = mq::build_heisenberg_xyz(6, 1.0, 0.5, 0.8);
    const mq::Observable obs(mq::PauliString::from_text("ZIIIII"));
    const auto psi0 = mq::StateVector::from_bits("000000");
    const auto hier = mq::LevelHierarchy::make(h, 1.0, 128, 5);
    const std::size_t n = 2000;
    bool ok = true;
    std::string detail;
    for (std::size_t l = 1; l <= 5; ++l) {
        std::vector<double> y(n);
        mq::for_each_index(mq::Execution::Parallel, n, [&](std::size_t i) {
            y[i] = mq::coupled_sample(h, hier, l, mq::RngStream{4242, (l << 32) | i}, psi0, obs).correction;
        });
        const auto s = mq::summarize(y);
        // Standard error of the sample variance from the fourth central moment.
        double m4 = 0.0;
        for (double x : y) m4 += std::pow(x - s.mean, 4);
        m4 /= static_cast<double>(n);
        const double se = std::sqrt(std::max(m4 - s.variance * s.variance, 0.0) / static_cast<double>(n));
        const double bound = mq::correction_variance_bound(l, 1.0, h.one_norm(), 128);
        ok = ok && s.variance <= bound + 3.0 * se;
        detail += fmt::format(" l{}:{:.3e}<={:.3e}", l, s.variance, bound + 3.0 * se);
    }
    report("variance-bound", ok, detail.substr(1), t, 120.0);
}

std::string all_csvs(mq::ExperimentConfig cfg, int threads, const mq::Fig1Result& fig1) {
    mq::set_thread_count(threads);
    std::ostringstream out;
    mq::write_fig1_csv(out, fig1);
    mq::write_fig2_csv(out, mq::run_fig2(cfg, cfg.seed));
    mq::write_fig3_csv(out, mq::run_fig3(cfg, fig1));
    cfg.mlmc.n_pilot = 50;
    mq::write_level_csv(out, mq::run_mlmc_pipeline(cfg, cfg.seed).result);
    cfg.qdrift.samples = 200;
    const auto q = mq::run_qdrift_pipeline(cfg, cfg.seed);
    out << fmt::format("{:.17g},{:.17g}\n", q.run.summary.mean, q.run.summary.variance);
    return out.str();
}

void determinism(const mq::ExperimentConfig& cfg) {
    Timer t;
    // The channel sweep gets its own shorter run; fig3 consumes whichever fig1 the thread count produced.
    auto small = cfg;
    small.fig1.levels = 4;
    small.fig3.fit_level_min = 2;
    small.fig3.fit_level_max = 4;
    mq::set_thread_count(1);
    const auto fig1_a = mq::run_fig1(small);
    const std::string a = all_csvs(cfg, 1, fig1_a);
    mq::set_thread_count(4);
    const auto fig1_b = mq::run_fig1(small);
    const std::string b = all_csvs(cfg, 4, fig1_b);
    const std::string c = all_csvs(cfg, 4, fig1_b);
    std::ostringstream fa, fb;
    mq::write_fig1_csv(fa, fig1_a);
    mq::write_fig1_csv(fb, fig1_b);
    const bool ok = a == b && b == c && fa.str() == fb.str();
    report("determinism", ok, fmt::format("threads 1 vs 4 vs 4: {} bytes, {}", a.size(), ok ? "identical" : "differ"),
           t, 600.0);
    mq::set_thread_count(0);
}

}  // namespace

int main() {
    mq::ExperimentConfig cfg;
    cfg.validate();
    exactness_anchors();
    oracle_suite();
    const auto fig1 = figure1(cfg);
    figure2(cfg);
    figure3(cfg, fig1);
    allocation_feasibility();
    variance_bound();
    determinism(cfg);
    fmt::print("{} failure(s)\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
