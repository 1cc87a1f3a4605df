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

#include "mlmc_qdrift/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

namespace mlmc_qdrift {

namespace {

using nlohmann::json;

constexpr std::uint64_t kFig2Tag = 0x66696732;    // "fig2"
constexpr std::uint64_t kMlmcTag = 0x6d6c6d72;    // "mlmr"
constexpr std::uint64_t kQDriftTag = 0x71647274;  // "qdrt"
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Setup {
    Hamiltonian h;
    Observable obs;
    StateVector psi0;
};

Setup make_setup(const ExperimentConfig& cfg) {
    return {cfg.hamiltonian.build(), cfg.make_observable(), cfg.make_initial_state()};
}

SampleSummary summarize_field(const std::vector<double>& values, std::size_t begin, std::size_t count) {
    return summarize(std::span<const double>(values).subspan(begin, count));
}

json fit_json(const FitResult& f) {
    json pts = json::array();
    for (const auto& [x, y] : f.points) {
        pts.push_back({x, y});
    }
    return {{"label", f.label}, {"slope", f.slope}, {"intercept", f.intercept}, {"points", pts}};
}

json row_json(const Fig3Row& r) {
    return {{"eps", r.eps},           {"L", r.levels},         {"std_gates", r.std_gates},
            {"mlmc_gates", r.mlmc_gates}, {"speedup", r.speedup}, {"sigma2", r.sigma2}};
}

json reports_json(const std::vector<SpeedupReport>& reports) {
    json out = json::array();
    for (const SpeedupReport& r : reports) {
        json item = row_json(r.row);
        item["allocation_gates"] = r.allocation_gates;
        out.push_back(item);
    }
    return out;
}

}  // namespace

BernoulliStats bernoulli_stats(double p_fine, double p_coarse) {
    if (!(p_fine >= 0.0 && p_fine <= 1.0) || !(p_coarse >= 0.0 && p_coarse <= 1.0)) {
        throw std::invalid_argument("bernoulli_stats: probabilities must lie in [0, 1]");
    }
    const double delta = std::abs(p_fine - p_coarse);
    return {4.0 * p_fine * (1.0 - p_fine), std::abs(2.0 * p_fine - 1.0), 4.0 * delta * (1.0 - delta), 2.0 * delta};
}

ExactReference exact_reference(const ExperimentConfig& cfg) {
    const Setup s = make_setup(cfg);
    const StateVector psi = exact_evolution(s.h, cfg.t, s.psi0);
    ExactReference out;
    out.expectation = expectation(s.obs, psi);
    out.p_inf = 0.5 * (1.0 + out.expectation);
    return out;
}

// ---------------------------------------------------------------------------

Fig1Result run_fig1(const ExperimentConfig& cfg, Execution exec) {
    const Setup s = make_setup(cfg);
    const DensityMatrix rho0 = DensityMatrix::from_pure(s.psi0);
    std::vector<Fig1Row> rows;
    for (std::size_t level = 0; level <= cfg.fig1.levels; ++level) {
        Fig1Row row;
        row.level = level;
        row.gate_count = std::uint64_t{cfg.n0} << level;
        row.p = channel_probability(s.h, s.obs, rho0, row.gate_count, cfg.t, exec);
        rows.push_back(row);
    }
    return fig1_from_probabilities(rows, exact_reference(cfg));
}

Fig1Result fig1_from_probabilities(const std::vector<Fig1Row>& rows, const ExactReference& exact) {
    Fig1Result out;
    out.exact = exact;
    out.rows = rows;
    std::vector<double> xs, log_var, log_mean;
    for (std::size_t k = 0; k < out.rows.size(); ++k) {
        Fig1Row& row = out.rows[k];
        if (k == 0) {
            const BernoulliStats b = bernoulli_stats(row.p, row.p);
            row.stats = {b.var_fine, b.mean_fine, kNaN, kNaN};
            continue;
        }
        row.stats = bernoulli_stats(row.p, out.rows[k - 1].p);
        if (row.stats.var_diff > 0.0 && row.stats.mean_diff > 0.0) {
            xs.push_back(static_cast<double>(row.level));
            log_var.push_back(std::log2(row.stats.var_diff));
            log_mean.push_back(std::log2(row.stats.mean_diff));
        }
    }
    if (xs.size() < 2) {
        throw std::runtime_error("fig1: fewer than 2 usable levels for the slope fits");
    }
    out.variance_fit = slope_fit(xs, log_var, "log2 var_diff vs level");
    out.mean_fit = slope_fit(xs, log_mean, "log2 mean_diff vs level");
    out.beta_hat = -out.variance_fit.slope;
    out.alpha_hat = -out.mean_fit.slope;

    for (std::size_t k = 1; k < out.rows.size(); ++k) {
        const Fig1Row& prev = out.rows[k - 1];
        const Fig1Row& cur = out.rows[k];
        if (prev.level < 3) {
            continue;
        }
        const double g0 = prev.p - exact.p_inf;
        const double g1 = cur.p - exact.p_inf;
        if (!(std::abs(g1) < std::abs(g0)) || g0 * g1 < 0.0) {
            out.monotone_tail = false;
            out.warnings.push_back(fmt::format("p_l not monotone toward p_inf between levels {} and {}",
                                               prev.level, cur.level));
        }
    }
    return out;
}

void write_fig1_csv(std::ostream& out, const Fig1Result& result) {
    out << "level,N,p,var_fine,mean_fine,var_diff,mean_diff\n";
    for (const Fig1Row& r : result.rows) {
        fmt::print(out, "{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.level, r.gate_count, r.p,
                   r.stats.var_fine, r.stats.mean_fine, r.stats.var_diff, r.stats.mean_diff);
    }
}

std::vector<Fig1Row> read_fig1_csv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        return cells;
    };
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("fig1.csv: empty file");
    }
    const std::vector<std::string> header = split(line);
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("fig1.csv: missing column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_level = column("level");
    const std::size_t c_n = column("N");
    const std::size_t c_p = column("p");
    std::vector<Fig1Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> cells = split(line);
        if (cells.size() != header.size()) {
            throw std::runtime_error("fig1.csv: row has " + std::to_string(cells.size()) + " cells, expected " +
                                     std::to_string(header.size()));
        }
        Fig1Row row;
        try {
            row.level = std::stoul(cells[c_level]);
            row.gate_count = std::stoull(cells[c_n]);
            row.p = std::stod(cells[c_p]);
        } catch (const std::exception&) {
            throw std::runtime_error("fig1.csv: unparsable row '" + line + "'");
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw std::runtime_error("fig1.csv: no data rows");
    }
    return rows;
}

// ---------------------------------------------------------------------------

Fig2Result run_fig2(const ExperimentConfig& cfg, std::uint64_t seed, Execution exec) {
    const Setup s = make_setup(cfg);
    const auto& f = cfg.fig2;
    const LevelHierarchy hier = LevelHierarchy::make(s.h, cfg.t, cfg.n0, f.level_max);
    const std::vector<std::uint64_t> schedule = f.schedule();

    // Flatten (level, sample) so one parallel loop balances all levels.
    std::vector<std::size_t> offsets{0};
    for (std::uint64_t n : schedule) {
        offsets.push_back(offsets.back() + n);
    }
    const std::size_t total = offsets.back();
    std::vector<double> var_shot(total), worst(total), err(total), err_tau(total), norm(total);
    std::vector<unsigned char> clamped(total);
    const RngStream root = RngStream{seed, 0}.derive(kFig2Tag);

    for_each_index(exec, total, [&](std::size_t job) {
        const std::size_t k = static_cast<std::size_t>(
            std::upper_bound(offsets.begin(), offsets.end(), job) - offsets.begin() - 1);
        const std::size_t level = f.level_min + k;
        const std::size_t i = job - offsets[k];
        const IndexSequence seq = sample_sequence(root.derive(level).derive(i), s.h, hier.gate_count(level));
        const AugmentedState chi = evolve_augmented(s.h, hier, level, seq, s.psi0, f.c);
        const ShotNoiseVariance v = shot_noise_variance(chi, s.obs);
        var_shot[job] = v.variance;
        worst[job] = v.worst_case;
        err[job] = chi.error_norm();
        err_tau[job] = chi.error_norm() / hier.tau(level);
        norm[job] = chi.squared_norm;
        clamped[job] = v.clamped ? 1 : 0;
    });

    Fig2Result out;
    std::vector<double> xs, log_var, log_err;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        Fig2Row row;
        row.level = f.level_min + k;
        row.gate_count = hier.gate_count(row.level);
        row.tau = hier.tau(row.level);
        row.zeta = zeta(row.level, hier, f.c);
        row.n_samples = schedule[k];
        row.var_shot = summarize_field(var_shot, offsets[k], schedule[k]);
        row.worst_case = summarize_field(worst, offsets[k], schedule[k]);
        row.error_norm = summarize_field(err, offsets[k], schedule[k]);
        row.error_over_tau = summarize_field(err_tau, offsets[k], schedule[k]);
        row.squared_norm = summarize_field(norm, offsets[k], schedule[k]);
        for (std::size_t j = offsets[k]; j < offsets[k + 1]; ++j) {
            row.clamped += clamped[j];
        }
        if (row.var_shot.mean > 0.0 && row.error_norm.mean > 0.0) {
            xs.push_back(static_cast<double>(row.level));
            log_var.push_back(std::log2(row.var_shot.mean));
            log_err.push_back(std::log2(row.error_norm.mean));
        }
        out.rows.push_back(row);
    }
    if (xs.size() >= 2) {
        out.fit = slope_fit(xs, log_var, "log2 mean Var_shot vs level");
        out.beta_shot_hat = -out.fit.slope;
        out.error_fit = slope_fit(xs, log_err, "log2 mean ||e|| vs level");
    } else if (out.rows.size() >= 2) {
        // e = 0 on every path (commuting or single-term H): Var_shot = tau exactly.
        std::vector<double> lx, ly;
        for (const Fig2Row& r : out.rows) {
            lx.push_back(static_cast<double>(r.level));
            ly.push_back(std::log2(r.var_shot.mean));
        }
        out.fit = slope_fit(lx, ly, "log2 mean Var_shot vs level");
        out.beta_shot_hat = -out.fit.slope;
    }
    return out;
}

void write_fig2_csv(std::ostream& out, const Fig2Result& result) {
    out << "level,N,tau,zeta,n_samples,mean_var_shot,stderr_var_shot\n";
    for (const Fig2Row& r : result.rows) {
        fmt::print(out, "{},{},{:.17g},{:.17g},{},{:.17g},{:.17g}\n", r.level, r.gate_count, r.tau, r.zeta,
                   r.n_samples, r.var_shot.mean, r.var_shot.standard_error());
    }
}

// ---------------------------------------------------------------------------

double Fig3Model::sigma2(std::size_t levels) const {
    const double n_l = static_cast<double>(std::uint64_t{n0} << levels);
    const double p = std::clamp(p_inf - c_p / n_l, 0.0, 1.0);
    return 4.0 * p * (1.0 - p);
}

std::vector<double> Fig3Model::variances(std::size_t levels) const {
    std::vector<double> v{4.0 * p0 * (1.0 - p0)};
    for (std::size_t l = 1; l <= levels; ++l) {
        double value = 0.0;
        if (variance_source == VarianceSource::Measured && !measured_var_diff.empty()) {
            const std::size_t have = measured_var_diff.size();
            value = l <= have ? measured_var_diff[l - 1]
                              : std::ldexp(measured_var_diff[have - 1], -static_cast<int>(l - have));
        } else {
            const double delta = std::min(1.0, c_p / static_cast<double>(std::uint64_t{n0} << l));
            value = 4.0 * delta * (1.0 - delta);
        }
        v.push_back(value);
    }
    return v;
}

std::vector<double> Fig3Model::costs(std::size_t levels) const {
    std::vector<double> c{static_cast<double>(n0)};
    for (std::size_t l = 1; l <= levels; ++l) {
        const double fine = static_cast<double>(std::uint64_t{n0} << l);
        c.push_back(correction_cost == CorrectionCost::Fine ? fine : 1.5 * fine);
    }
    return c;
}

Fig3Row Fig3Model::evaluate(double eps) const {
    Fig3Row row;
    row.eps = eps;
    row.levels = choose_L(eps, bias_constant, n0);
    row.sigma2 = sigma2(row.levels);
    row.std_gates = std_cost(eps, bias_constant, row.sigma2).total_gates;
    const std::vector<double> v = variances(row.levels);
    const std::vector<double> c = costs(row.levels);
    row.mlmc_gates = mlmc_cost(v, c, eps);
    row.speedup = row.std_gates / row.mlmc_gates;
    return row;
}

Fig3Model make_fig3_model(const ExperimentConfig& cfg, const Fig1Result& fig1, const BiasConstantFit& fit) {
    Fig3Model m;
    m.c_p = fit.c_p;
    m.bias_constant = 2.0 * fit.c_p;
    m.p_inf = fig1.exact.p_inf;
    m.n0 = cfg.n0;
    m.correction_cost = cfg.fig3.correction_cost;
    m.variance_source = cfg.fig3.variance_source;
    if (fig1.rows.empty() || fig1.rows.front().gate_count != cfg.n0) {
        throw std::runtime_error("fig3: fig1 data does not start at N0 = " + std::to_string(cfg.n0));
    }
    m.p0 = fig1.rows.front().p;
    for (std::size_t k = 1; k < fig1.rows.size(); ++k) {
        m.measured_var_diff.push_back(fig1.rows[k].stats.var_diff);
    }
    return m;
}

Fig3Result run_fig3(const ExperimentConfig& cfg, const Fig1Result& fig1) {
    const auto& f = cfg.fig3;
    std::vector<double> ns, ps;
    for (const Fig1Row& r : fig1.rows) {
        if (r.level >= f.fit_level_min && r.level <= f.fit_level_max) {
            ns.push_back(static_cast<double>(r.gate_count));
            ps.push_back(r.p);
        }
    }
    Fig3Result out;
    try {
        out.c_p_fit = fit_bias_constant(ns, ps, fig1.exact.p_inf);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("fig3: ") + e.what());
    }
    out.model = make_fig3_model(cfg, fig1, out.c_p_fit);
    out.sigma2_inf = 4.0 * out.model.p_inf * (1.0 - out.model.p_inf);

    const double log_lo = std::log(f.eps_min);
    const double log_hi = std::log(f.eps_max);
    for (std::size_t k = 0; k < f.eps_points; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(f.eps_points - 1);
        out.rows.push_back(out.model.evaluate(std::exp(log_lo + frac * (log_hi - log_lo))));
    }

    auto analyse = [&](const Fig3Model& model, CrossingSearch& crossing, std::vector<SpeedupReport>& reports) {
        const double multilevel_hi =
            std::min(f.eps_max, std::sqrt(2.0) * model.bias_constant / static_cast<double>(model.n0) * (1.0 - 1e-12));
        if (multilevel_hi > f.eps_min) {
            crossing = largest_crossing([&](double eps) { return model.evaluate(eps).speedup; }, f.eps_min,
                                        multilevel_hi, 400);
        }
        for (double eps : f.report_eps) {
            SpeedupReport r;
            r.eps = eps;
            r.row = model.evaluate(eps);
            const AllocationPlan plan =
                optimal_allocation(model.variances(r.row.levels), model.costs(r.row.levels), eps);
            r.allocation_gates = static_cast<std::uint64_t>(plan.predicted_total_gates);
            reports.push_back(r);
        }
    };
    analyse(out.model, out.crossover, out.reports);
    Fig3Model coupled = out.model;
    coupled.correction_cost = CorrectionCost::Coupled;
    analyse(coupled, out.crossover_coupled, out.reports_coupled);

    const double kappa = out.model.correction_cost == CorrectionCost::Fine ? 1.0 : 1.5;
    const double v0 = 4.0 * out.model.p0 * (1.0 - out.model.p0);
    out.constant_model = crossover_solve(out.model.bias_constant, out.sigma2_inf, 4.0 * out.model.c_p, cfg.n0, v0,
                                         kappa, f.eps_min, f.eps_max);
    return out;
}

void write_fig3_csv(std::ostream& out, const Fig3Result& result) {
    out << "eps,L,std_gates,mlmc_gates,speedup\n";
    for (const Fig3Row& r : result.rows) {
        fmt::print(out, "{:.17g},{},{:.17g},{:.17g},{:.17g}\n", r.eps, r.levels, r.std_gates, r.mlmc_gates,
                   r.speedup);
    }
}

// ---------------------------------------------------------------------------

MlmcPipelineResult run_mlmc_pipeline(const ExperimentConfig& cfg, std::uint64_t seed, Execution exec) {
    const Setup s = make_setup(cfg);
    const auto& m = cfg.mlmc;
    MlmcPipelineResult out;
    out.exact = exact_reference(cfg);
    out.bias_constant = m.bias_constant > 0.0 ? m.bias_constant
                                              : 2.0 * s.h.one_norm() * s.h.one_norm() * cfg.t * cfg.t;
    const std::size_t levels = m.levels ? *m.levels : choose_L(m.eps, out.bias_constant, cfg.n0);
    out.hierarchy = LevelHierarchy::make(s.h, cfg.t, cfg.n0, levels);
    const RngStream root = RngStream{seed, 0}.derive(kMlmcTag);
    if (m.variance_mode == VarianceMode::Pilot) {
        out.variances = pilot_variances(s.h, s.obs, s.psi0, out.hierarchy, m.n_pilot, root, m.measurement, exec);
    } else {
        // ||O||^2 = 1 bounds the level-0 variance.
        out.variances = analytic_variances(1.0, out.hierarchy, cfg.t, s.h.one_norm());
    }
    out.costs = level_costs(out.hierarchy);
    out.plan = optimal_allocation(out.variances, out.costs, m.eps);
    out.result = run_mlmc(s.h, s.obs, s.psi0, out.hierarchy, out.plan, root, m.measurement, exec);
    return out;
}

QDriftPipelineResult run_qdrift_pipeline(const ExperimentConfig& cfg, std::uint64_t seed, Execution exec) {
    const Setup s = make_setup(cfg);
    QDriftPipelineResult out;
    out.exact = exact_reference(cfg);
    out.run = run_qdrift(s.h, s.obs, s.psi0, cfg.t, cfg.qdrift.gate_count, cfg.qdrift.samples,
                         RngStream{seed, 0}.derive(kQDriftTag), cfg.qdrift.measurement, exec);
    out.bias_bound = bias_bound(s.h.one_norm(), cfg.t, cfg.qdrift.gate_count);
    return out;
}

// ---------------------------------------------------------------------------

std::string fig1_summary_json(const Fig1Result& r) {
    json j;
    j["alpha_hat"] = r.alpha_hat;
    j["beta_hat"] = r.beta_hat;
    j["fig1"] = {{"exact_expectation", r.exact.expectation},
                 {"p_inf", r.exact.p_inf},
                 {"variance_fit", fit_json(r.variance_fit)},
                 {"mean_fit", fit_json(r.mean_fit)},
                 {"var_fine_finest", r.rows.back().stats.var_fine},
                 {"monotone_tail", r.monotone_tail},
                 {"warnings", r.warnings},
                 {"note",
                  "p_l is computed from the standard averaged qDRIFT channel; the index-sharing coarse "
                  "marginal is the same channel, so the coupling only enters through the maximally "
                  "coupled Bernoulli outcomes"}};
    return j.dump();
}

std::string fig2_summary_json(const Fig2Result& r, std::uint64_t seed) {
    json rows = json::array();
    for (const Fig2Row& row : r.rows) {
        rows.push_back({{"level", row.level},
                        {"mean_var_shot", row.var_shot.mean},
                        {"mean_worst_case", row.worst_case.mean},
                        {"mean_error_norm", row.error_norm.mean},
                        {"mean_error_over_tau", row.error_over_tau.mean},
                        {"mean_squared_norm", row.squared_norm.mean},
                        {"clamped", row.clamped}});
    }
    json j;
    j["beta_shot_hat"] = r.beta_shot_hat;
    j["seeds"] = {{"fig2", seed}};
    j["fig2"] = {{"fit", fit_json(r.fit)}, {"error_norm_fit", fit_json(r.error_fit)}, {"levels", rows}};
    return j.dump();
}

std::string fig3_summary_json(const Fig3Result& r) {
    json j;
    j["c_p"] = r.c_p_fit.c_p;
    j["sigma2"] = r.sigma2_inf;
    j["eps_star"] = r.crossover.found ? json(r.crossover.eps) : json(nullptr);
    const CrossoverResult& cm = r.constant_model;
    j["fig3"] = {
        {"bias_constant", r.model.bias_constant},
        {"c_p_fit", fit_json(r.c_p_fit.constrained)},
        {"c_p_unconstrained_fit", fit_json(r.c_p_fit.unconstrained)},
        {"correction_cost", r.model.correction_cost == CorrectionCost::Fine ? "fine" : "coupled"},
        {"variance_source", r.model.variance_source == VarianceSource::Model ? "model" : "measured"},
        {"speedups", reports_json(r.reports)},
        {"coupled_cost",
         {{"eps_star", r.crossover_coupled.found ? json(r.crossover_coupled.eps) : json(nullptr)},
          {"speedups", reports_json(r.reports_coupled)}}},
        {"constant_model",
         {{"found", cm.found},
          {"eps_star", cm.eps_star},
          {"regime", cm.regime},
          {"eps_overhead", cm.eps_overhead},
          {"log_root_found", cm.log_root_found},
          {"log_root_x", cm.log_root_x},
          {"eps_log", cm.eps_log}}}};
    return j.dump();
}

std::string mlmc_summary_json(const MlmcPipelineResult& r, std::uint64_t seed) {
    json levels = json::array();
    for (const LevelStats& s : r.result.levels) {
        levels.push_back({{"level", s.level},
                          {"N", s.gate_count},
                          {"n", s.n},
                          {"mean", s.mean},
                          {"variance", s.variance},
                          {"cost_per_sample", s.cost_per_sample}});
    }
    json j;
    j["seeds"] = {{"mlmc", seed}};
    j["mlmc"] = {{"estimate", r.result.estimate},
                 {"exact", r.exact.expectation},
                 {"eps", r.plan.eps},
                 {"L", r.hierarchy.finest},
                 {"bias_constant", r.bias_constant},
                 {"planning_variances", r.variances},
                 {"predicted_total_gates", r.plan.predicted_total_gates},
                 {"total_gates", r.result.total_gates},
                 {"estimator_variance", r.result.estimator_variance},
                 {"levels", levels}};
    return j.dump();
}

std::string qdrift_summary_json(const QDriftPipelineResult& r, std::uint64_t seed) {
    json j;
    j["seeds"] = {{"qdrift", seed}};
    j["qdrift"] = {{"N", r.run.config.gate_count},
                   {"tau", r.run.config.tau},
                   {"samples", r.run.summary.n},
                   {"mean", r.run.summary.mean},
                   {"variance", r.run.summary.variance},
                   {"standard_error", r.run.summary.standard_error()},
                   {"exact", r.exact.expectation},
                   {"bias_bound", r.bias_bound},
                   {"total_gates", r.run.total_gates}};
    return j.dump();
}

void merge_summary(const std::filesystem::path& path, const std::string& fragment, const ExperimentConfig& cfg) {
    json merged = json::object();
    if (std::ifstream in(path); in) {
        try {
            merged = json::parse(in);
        } catch (const json::parse_error&) {
            merged = json::object();
        }
        if (!merged.is_object()) {
            merged = json::object();
        }
    }
    merged.update(json::parse(fragment), true);
    merged["config"] = json::parse(config_to_json(cfg));
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << merged.dump(2) << '\n';
}

}  // namespace mlmc_qdrift
