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


#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mlmc_qdrift/config.hpp"
#include "mlmc_qdrift/experiments.hpp"

namespace mq = mlmc_qdrift;

namespace {

// Small chain so every test here stays under a second or two.
mq::ExperimentConfig small_config() {
    return mq::parse_config(R"({
      "hamiltonian": {"builder": "heisenberg_xyz", "n": 4, "Jx": 1.0, "Jy": 0.5, "Jz": 0.8},
      "observable": "ZIII", "initial_state": "0000", "t": 1.0, "n0": 64,
      "fig1": {"levels": 5},
      "fig2": {"level_min": 1, "level_max": 4, "samples": [40, 30, 30, 20]},
      "fig3": {"fit_level_min": 2, "fit_level_max": 5}
    })");
}

TEST(Bernoulli, WorkedExamples) {
    const auto s = mq::bernoulli_stats(0.7512, 0.7);
    EXPECT_NEAR(s.var_fine, 0.748, 1e-3);
    EXPECT_NEAR(s.mean_fine, 0.5024, 1e-12);
    EXPECT_NEAR(s.mean_diff, 2 * 0.0512, 1e-12);
    EXPECT_NEAR(s.var_diff, 4 * 0.0512 * (1 - 0.0512), 1e-12);
    const auto half = mq::bernoulli_stats(0.5, 0.5);
    EXPECT_DOUBLE_EQ(half.var_fine, 1.0);
    EXPECT_DOUBLE_EQ(half.var_diff, 0.0);
    EXPECT_THROW(mq::bernoulli_stats(1.2, 0.5), std::invalid_argument);
}

TEST(Fig1, SmallChainDecaysAndRoundTrips) {
    const auto cfg = small_config();
    const auto r = mq::run_fig1(cfg);
    ASSERT_EQ(r.rows.size(), 6u);
    EXPECT_EQ(r.rows[3].gate_count, 512u);
    EXPECT_TRUE(std::isnan(r.rows[0].stats.var_diff));
    EXPECT_GT(r.beta_hat, 0.7);
    EXPECT_GT(r.alpha_hat, 0.7);

    std::stringstream csv;
    mq::write_fig1_csv(csv, r);
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "level,N,p,var_fine,mean_fine,var_diff,mean_diff");
    csv.seekg(0);
    const auto rows = mq::read_fig1_csv(csv);
    ASSERT_EQ(rows.size(), r.rows.size());
    const auto again = mq::fig1_from_probabilities(rows, r.exact);
    EXPECT_DOUBLE_EQ(again.beta_hat, r.beta_hat);
    EXPECT_EQ(rows.back().p, r.rows.back().p);
}

TEST(Fig1, CsvReaderMatchesColumnsByName) {
    std::stringstream in("p,N,level\n0.6,16,0\n0.65,32,1\n");
    const auto rows = mq::read_fig1_csv(in);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].gate_count, 32u);
    EXPECT_DOUBLE_EQ(rows[1].p, 0.65);
    std::stringstream missing("level,N\n0,16\n");
    EXPECT_THROW(mq::read_fig1_csv(missing), std::runtime_error);
}

TEST(Fig2, DeterministicAndThreadIndependent) {
    const auto cfg = small_config();
    const auto a = mq::run_fig2(cfg, 7, mq::Execution::Parallel);
    const auto b = mq::run_fig2(cfg, 7, mq::Execution::Serial);
    std::stringstream sa, sb;
    mq::write_fig2_csv(sa, a);
    mq::write_fig2_csv(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
    std::string header;
    std::getline(sa, header);
    EXPECT_EQ(header, "level,N,tau,zeta,n_samples,mean_var_shot,stderr_var_shot");
    ASSERT_EQ(a.rows.size(), 4u);
    EXPECT_EQ(a.rows[0].n_samples, 40u);
    const auto c = mq::run_fig2(cfg, 8);
    EXPECT_NE(c.rows[0].var_shot.mean, a.rows[0].var_shot.mean);
}

TEST(Fig2, SingleTermGivesExactTauScaling) {
    const auto cfg = mq::parse_config(R"({
      "hamiltonian": {"terms": [{"coeff": 0.7, "pauli": "XY"}]},
      "observable": "ZI", "initial_state": "00", "n0": 8,
      "fig2": {"level_min": 1, "level_max": 4, "samples": [5, 5, 5, 5]}
    })");
    const auto r = mq::run_fig2(cfg, 1);
    EXPECT_NEAR(r.beta_shot_hat, 1.0, 1e-10);
    for (const auto& row : r.rows) {
        EXPECT_NEAR(row.var_shot.mean, row.tau, 1e-12);
        EXPECT_NEAR(row.error_norm.mean, 0.0, 1e-12);
    }
}

// Measured: ||e|| shrinks like sqrt(tau), not tau.
TEST(Fig2, ErrorNormScalesLikeRootTau) {
    auto cfg = small_config();
    cfg.fig2.samples = {80, 80, 80, 80};
    const auto r = mq::run_fig2(cfg, 3);
    EXPECT_NEAR(r.error_fit.slope, -0.5, 0.15);
    EXPECT_NEAR(r.beta_shot_hat, 1.0, 0.2);
}

mq::Fig1Result synthetic_fig1(const mq::ExperimentConfig& cfg, double c, double p_inf) {
    std::vector<mq::Fig1Row> rows;
    for (std::size_t l = 0; l <= 7; ++l) {
        mq::Fig1Row row;
        row.level = l;
        row.gate_count = cfg.n0 << l;
        row.p = p_inf - c / static_cast<double>(row.gate_count);
        rows.push_back(row);
    }
    return mq::fig1_from_probabilities(rows, mq::ExactReference{2 * p_inf - 1, p_inf});
}

TEST(Fig3, SyntheticDataRecoversConstantAndCosts) {
    mq::ExperimentConfig cfg;
    const auto fig1 = synthetic_fig1(cfg, 10.0, 0.75);
    const auto r = mq::run_fig3(cfg, fig1);
    EXPECT_NEAR(r.c_p_fit.c_p, 10.0, 1e-9);
    EXPECT_DOUBLE_EQ(r.model.bias_constant, 20.0);
    ASSERT_EQ(r.rows.size(), cfg.fig3.eps_points);
    for (const auto& row : r.rows) {
        const auto v = r.model.variances(row.levels);
        const auto c = r.model.costs(row.levels);
        ASSERT_DOUBLE_EQ(row.mlmc_gates, mq::mlmc_cost(v, c, row.eps));
        ASSERT_DOUBLE_EQ(row.std_gates, mq::std_cost(row.eps, 20.0, r.model.sigma2(row.levels)).total_gates);
        ASSERT_EQ(row.levels, mq::choose_L(row.eps, 20.0, cfg.n0));
    }
    // Speedup grows as eps shrinks.
    EXPECT_GT(r.rows.front().speedup, r.rows.back().speedup);
    ASSERT_EQ(r.reports.size(), 3u);
    EXPECT_GT(r.reports[2].row.speedup, r.reports[0].row.speedup);

    std::stringstream csv;
    mq::write_fig3_csv(csv, r);
    std::string header;
    std::getline(csv, header);
    EXPECT_EQ(header, "eps,L,std_gates,mlmc_gates,speedup");
}

TEST(Fig3, RejectsMismatchedBaseGateCount) {
    mq::ExperimentConfig cfg;
    const auto fig1 = synthetic_fig1(cfg, 10.0, 0.75);
    cfg.n0 = 64;
    EXPECT_THROW(mq::run_fig3(cfg, fig1), std::runtime_error);
}

TEST(Config, DefaultsAndRoundTrip) {
    const auto cfg = mq::parse_config("{}");
    EXPECT_EQ(cfg.n0, 128u);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_DOUBLE_EQ(cfg.hamiltonian.build().one_norm(), 11.5);
    const std::string text = mq::config_to_json(cfg);
    EXPECT_EQ(mq::config_to_json(mq::parse_config(text)), text);
    const auto s = small_config();
    EXPECT_EQ(mq::config_to_json(mq::parse_config(mq::config_to_json(s))), mq::config_to_json(s));
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(mq::parse_config(R"({"bogus": 1})"), mq::ConfigError);
    EXPECT_THROW(mq::parse_config(R"({"fig1": {"levles": 3}})"), mq::ConfigError);
    EXPECT_THROW(mq::parse_config(R"({"mlmc": {"measurement": "weak"}})"), mq::ConfigError);
    EXPECT_THROW(mq::parse_config(R"({"t": "one"})"), mq::ConfigError);
    EXPECT_THROW(mq::parse_config(R"({"n0": -3})"), mq::ConfigError);
    EXPECT_THROW(mq::parse_config("{not json"), mq::ConfigError);
    EXPECT_THROW(mq::parse_config(R"({"observable": "ZII"})"), mq::ConfigError);
    try {
        mq::load_config("/nonexistent/dir/cfg.json");
        FAIL() << "expected ConfigError";
    } catch (const mq::ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/cfg.json"), std::string::npos);
    }
}

TEST(Fig2Config, LinearSchedule) {
    mq::Fig2Config f;
    EXPECT_EQ(f.schedule(), (std::vector<std::uint64_t>{300, 245, 190, 135, 80}));
    mq::ExperimentConfig cfg;
    cfg.fig2.samples = {1, 2};
    EXPECT_THROW(cfg.validate(), mq::ConfigError);
}

TEST(Pipelines, SmallRunsAreConsistent) {
    auto cfg = small_config();
    cfg.mlmc.eps = 0.1;
    cfg.mlmc.n_pilot = 20;
    const auto m = mq::run_mlmc_pipeline(cfg, 5);
    EXPECT_EQ(m.variances.size(), m.hierarchy.num_levels());
    EXPECT_LE(m.plan.variance_sum, 0.5 * 0.01 * (1 + 1e-12));
    EXPECT_NEAR(m.result.estimate, m.exact.expectation, 0.3);
    cfg.qdrift.samples = 200;
    const auto q = mq::run_qdrift_pipeline(cfg, 5);
    EXPECT_EQ(q.run.total_gates, cfg.qdrift.gate_count * 200);
}

}  // namespace
