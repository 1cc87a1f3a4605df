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

// mlmc-qdrift: command-line driver for the experiment pipelines.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "mlmc_qdrift/experiments.hpp"
#include "mlmc_qdrift/manifest.hpp"

namespace fs = std::filesystem;
using namespace mlmc_qdrift;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    std::optional<int> threads;
    std::optional<double> eps;
    std::optional<std::size_t> levels;
    std::optional<std::size_t> n0;
    std::optional<std::size_t> pilot;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "JSON experiment config (defaults: 6-qubit Heisenberg XYZ)");
    cmd->add_option("--seed", args.seed, "RNG seed; fully determines randomized outputs");
    cmd->add_option("--out", args.out, "output directory")->capture_default_str();
    cmd->add_option("--threads", args.threads, "worker threads (0 = auto, falls back to MLMC_QDRIFT_THREADS)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--eps", args.eps, "target RMSE for mlmc-run")->check(CLI::PositiveNumber);
    cmd->add_option("--levels", args.levels,
                    "finest level (variance-decay/gate-cost: fig1 levels; shot-noise: last level; mlmc-run: L)");
    cmd->add_option("--n0", args.n0, "coarsest gate count N0");
    cmd->add_option("--pilot", args.pilot, "pilot samples per level for mlmc-run");
}

struct Context {
    ExperimentConfig cfg;
    std::uint64_t seed = 0;
    fs::path out;
    std::string command;
    std::string config_path;
    std::string config_hash;
    std::chrono::steady_clock::time_point start;
};

Context prepare(const std::string& command, const CommonArgs& args) {
    Context ctx;
    ctx.command = command;
    ctx.start = std::chrono::steady_clock::now();
    if (!args.config.empty()) {
        ctx.cfg = load_config(args.config);
        ctx.config_path = args.config;
        ctx.config_hash = git_blob_sha1_file(args.config);
    } else {
        ctx.config_hash = git_blob_sha1(config_to_json(ctx.cfg));
    }
    auto& cfg = ctx.cfg;
    if (args.seed) cfg.seed = *args.seed;
    if (args.threads) cfg.threads = *args.threads;
    if (args.eps) cfg.mlmc.eps = *args.eps;
    if (args.n0) cfg.n0 = *args.n0;
    if (args.pilot) cfg.mlmc.n_pilot = *args.pilot;
    if (args.levels) {
        if (command == "variance-decay" || command == "gate-cost") {
            cfg.fig1.levels = *args.levels;
            if (cfg.fig3.fit_level_max > cfg.fig1.levels) {
                cfg.fig3.fit_level_max = cfg.fig1.levels;
            }
        } else if (command == "shot-noise") {
            cfg.fig2.level_max = *args.levels;
        } else if (command == "mlmc-run") {
            cfg.mlmc.levels = *args.levels;
        }
    }
    cfg.validate();
    ctx.seed = cfg.seed;
    set_thread_count(cfg.threads);
    ctx.out = args.out;
    return ctx;
}

fs::path subdir(const Context& ctx, const char* name) {
    const fs::path dir = ctx.out / name;
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return f;
}

void finish(const Context& ctx, const fs::path& dir) {
    RunManifest m;
    m.command = ctx.command;
    m.config_path = ctx.config_path;
    m.seed = ctx.seed;
    m.config_hash = ctx.config_hash;
    m.output_dir = ctx.out.string();
    m.threads = thread_count();
    m.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
    m.write(dir / "manifest.json");
}

int cmd_variance_decay(const Context& ctx) {
    const Fig1Result r = run_fig1(ctx.cfg);
    const fs::path dir = subdir(ctx, "fig1");
    auto csv = open_out(dir / "fig1.csv");
    write_fig1_csv(csv, r);
    csv.close();
    merge_summary(ctx.out / "summary.json", fig1_summary_json(r), ctx.cfg);
    for (const std::string& w : r.warnings) {
        fmt::print(std::cerr, "warning: {}\n", w);
    }
    fmt::print("p_inf = {:.10f}  beta_hat = {:.4f}  alpha_hat = {:.4f}  var_fine(L) = {:.5f}\n", r.exact.p_inf,
               r.beta_hat, r.alpha_hat, r.rows.back().stats.var_fine);
    finish(ctx, dir);
    return 0;
}

int cmd_shot_noise(const Context& ctx) {
    const Fig2Result r = run_fig2(ctx.cfg, ctx.seed);
    const fs::path dir = subdir(ctx, "fig2");
    auto csv = open_out(dir / "fig2.csv");
    write_fig2_csv(csv, r);
    csv.close();
    merge_summary(ctx.out / "summary.json", fig2_summary_json(r, ctx.seed), ctx.cfg);
    std::uint64_t clamped = 0;
    for (const Fig2Row& row : r.rows) {
        clamped += row.clamped;
    }
    if (clamped > 0) {
        fmt::print(std::cerr, "warning: {} paths had a negative raw shot-noise variance (clamped to 0)\n", clamped);
    }
    fmt::print("beta_shot_hat = {:.4f}\n", r.beta_shot_hat);
    finish(ctx, dir);
    return 0;
}

int cmd_gate_cost(const Context& ctx) {
    const fs::path fig1_csv = ctx.out / "fig1" / "fig1.csv";
    std::optional<Fig1Result> fig1;
    if (std::ifstream in(fig1_csv); in) {
        const Fig1Result cached = fig1_from_probabilities(read_fig1_csv(in), exact_reference(ctx.cfg));
        const bool matches = !cached.rows.empty() && cached.rows.front().gate_count == ctx.cfg.n0 &&
                             cached.rows.back().level >= ctx.cfg.fig3.fit_level_max;
        if (matches) {
            fmt::print(std::cerr, "using channel data from {}\n", fig1_csv.string());
            fig1 = cached;
        }
    }
    if (!fig1) {
        fig1 = run_fig1(ctx.cfg);
    }
    const Fig3Result r = run_fig3(ctx.cfg, *fig1);
    const fs::path dir = subdir(ctx, "fig3");
    auto csv = open_out(dir / "fig3.csv");
    write_fig3_csv(csv, r);
    csv.close();
    merge_summary(ctx.out / "summary.json", fig3_summary_json(r), ctx.cfg);
    fmt::print("c_p = {:.4f}  B = {:.4f}  eps* = {}\n", r.c_p_fit.c_p, r.model.bias_constant,
               r.crossover.found ? fmt::format("{:.4g}", r.crossover.eps) : std::string("none"));
    for (const SpeedupReport& s : r.reports) {
        fmt::print("eps = {:.0e}  L = {}  std = {:.4g}  mlmc = {:.4g}  speedup = {:.3f}\n", s.eps, s.row.levels,
                   s.row.std_gates, s.row.mlmc_gates, s.row.speedup);
    }
    finish(ctx, dir);
    return 0;
}

int cmd_mlmc_run(const Context& ctx) {
    const MlmcPipelineResult r = run_mlmc_pipeline(ctx.cfg, ctx.seed);
    const fs::path dir = subdir(ctx, "mlmc");
    auto csv = open_out(dir / "levels.csv");
    write_level_csv(csv, r.result);
    csv.close();
    merge_summary(ctx.out / "summary.json", mlmc_summary_json(r, ctx.seed), ctx.cfg);
    fmt::print("Y_hat = {:.6f}  (exact {:.6f})  eps = {}  L = {}\n", r.result.estimate, r.exact.expectation,
               r.plan.eps, r.hierarchy.finest);
    fmt::print("{:>5} {:>8} {:>10} {:>12} {:>12} {:>8}\n", "level", "N_l", "n_l", "mean_Y", "var_Y", "C_l");
    for (const LevelStats& s : r.result.levels) {
        fmt::print("{:>5} {:>8} {:>10} {:>12.6f} {:>12.4e} {:>8}\n", s.level, s.gate_count, s.n, s.mean, s.variance,
                   s.cost_per_sample);
    }
    fmt::print("total gates = {}\n", r.result.total_gates);
    finish(ctx, dir);
    return 0;
}

int cmd_qdrift_run(const Context& ctx) {
    const QDriftPipelineResult r = run_qdrift_pipeline(ctx.cfg, ctx.seed);
    const fs::path dir = subdir(ctx, "qdrift");
    merge_summary(ctx.out / "summary.json", qdrift_summary_json(r, ctx.seed), ctx.cfg);
    fmt::print("N = {}  samples = {}  mean = {:.6f} +- {:.6f}  exact = {:.6f}  bias bound = {:.4g}\n",
               r.run.config.gate_count, r.run.summary.n, r.run.summary.mean, r.run.summary.standard_error(),
               r.exact.expectation, r.bias_bound);
    fmt::print("total gates = {}\n", r.run.total_gates);
    finish(ctx, dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qDRIFT and multilevel Monte Carlo experiments"};
    app.require_subcommand(1);
    app.allow_extras(false);

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const Context&);
        CommonArgs args;
        CLI::App* cmd = nullptr;
    };
    Entry entries[] = {
        {"variance-decay", "exact-channel level statistics and rate fits (fig1)", cmd_variance_decay, {}},
        {"shot-noise", "augmented-state shot-noise variance per level (fig2)", cmd_shot_noise, {}},
        {"gate-cost", "standard vs multilevel gate complexity and crossover (fig3)", cmd_gate_cost, {}},
        {"mlmc-run", "run the multilevel estimator at a target eps", cmd_mlmc_run, {}},
        {"qdrift-run", "run plain qDRIFT sampling", cmd_qdrift_run, {}},
    };
    for (Entry& e : entries) {
        e.cmd = app.add_subcommand(e.name, e.help);
        add_common(e.cmd, e.args);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    for (Entry& e : entries) {
        if (!e.cmd->parsed()) {
            continue;
        }
        Context ctx;
        try {
            ctx = prepare(e.name, e.args);
        } catch (const ConfigError& err) {
            fmt::print(std::cerr, "config error: {}\n", err.what());
            return kExitConfig;
        } catch (const std::exception& err) {
            fmt::print(std::cerr, "config error: {}\n", err.what());
            return kExitConfig;
        }
        try {
            return e.run(ctx);
        } catch (const std::exception& err) {
            fmt::print(std::cerr, "error: {}\n", err.what());
            return kExitRuntime;
        }
    }
    return kExitConfig;
}
