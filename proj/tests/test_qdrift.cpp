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
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "mlmc_qdrift/qdrift.hpp"
#include "oracles.hpp"

namespace mq = mlmc_qdrift;

namespace {

mq::Hamiltonian two_term() {
    return mq::Hamiltonian({{0.7, mq::PauliString::from_text("XZ")}, {-0.4, mq::PauliString::from_text("YI")}});
}

TEST(QDriftConfig, StepSize) {
    const auto h = mq::build_heisenberg_xyz(6, 1.0, 0.5, 0.8);
    const auto cfg = mq::QDriftConfig::make(h, 1.0, 128);
    EXPECT_DOUBLE_EQ(cfg.tau, 11.5 / 128.0);
    EXPECT_THROW(mq::QDriftConfig::make(h, 1.0, 0), std::invalid_argument);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
    const mq::RngStream s{7, 0};
    mq::RngEngine a(s.derive(3)), b(s.derive(3)), c(s.derive(4));
    const auto xa = a.next_u64();
    EXPECT_EQ(xa, b.next_u64());
    EXPECT_NE(xa, c.next_u64());
    for (int k = 0; k < 1000; ++k) {
        const double u = a.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(SampleSequence, FrequenciesMatchProbabilities) {
    const auto h = mq::build_heisenberg_xyz(6, 1.0, 0.5, 0.8);
    const auto seq = mq::sample_sequence(mq::RngStream{3, 0}, h, 200000);
    std::vector<double> counts(h.num_terms(), 0.0);
    for (auto j : seq.indices) counts[j] += 1.0;
    for (std::size_t j = 0; j < h.num_terms(); ++j) {
        const double p = h.probs()[j];
        const double se = std::sqrt(p * (1 - p) / 200000.0);
        EXPECT_NEAR(counts[j] / 200000.0, p, 5 * se) << j;
    }
}

TEST(RunTrajectory, MatchesCircuitUnitary) {
    oracle::Gen gen(31);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + gen.index(3);
        const auto h = gen.hamiltonian(n, 1 + gen.index(4));
        const auto seq = mq::sample_sequence(mq::RngStream{static_cast<std::uint64_t>(trial), 1}, h, 12);
        const double tau = gen.uniform(0.01, 0.5);
        const auto psi = gen.state(n);
        const auto out = mq::run_trajectory(h, seq, tau, psi);
        const Eigen::VectorXcd want = oracle::circuit_unitary(h, seq.indices, tau) * oracle::to_vec(psi);
        EXPECT_LT(oracle::max_abs(oracle::to_vec(out), want), 1e-12);
    }
}

TEST(RunTrajectory, RejectsBadIndex) {
    const auto h = two_term();
    EXPECT_THROW(mq::run_trajectory(h, mq::IndexSequence{{0, 2}}, 0.1, mq::StateVector(2)), std::out_of_range);
    EXPECT_THROW(mq::run_trajectory(h, mq::IndexSequence{{0}}, 0.1, mq::StateVector(3)), std::invalid_argument);
}

// Averaged channel against exhaustive enumeration of all sequences.
TEST(AveragedChannel, MatchesEnumerationTwoTerms) {
    const auto h = two_term();
    oracle::Gen gen(32);
    for (std::size_t n = 1; n <= 3; ++n) {
        const double t = 0.9;
        const double tau = h.one_norm() * t / static_cast<double>(n);
        const Eigen::MatrixXcd rho0 = gen.density(2);
        const auto got = mq::iterate_channel(h, t, n, mq::DensityMatrix::from_eigen(2, rho0));
        EXPECT_LT(oracle::max_abs(got.to_eigen(), oracle::enumerated_channel(h, n, tau, rho0)), 1e-12) << n;
    }
}

TEST(AveragedChannel, PropertyRandomHamiltoniansMatchEnumeration) {
    oracle::Gen gen(33);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 1 + gen.index(3);
        const auto h = gen.hamiltonian(n, 1 + gen.index(3));
        const double tau = gen.uniform(0.05, 1.0);
        const Eigen::MatrixXcd rho0 = gen.density(n);
        const auto one = mq::averaged_channel_step(h, tau, mq::DensityMatrix::from_eigen(n, rho0));
        EXPECT_LT(oracle::max_abs(one.to_eigen(), oracle::enumerated_channel(h, 1, tau, rho0)), 1e-12);
        EXPECT_NEAR(one.trace().real(), 1.0, 1e-12);
        EXPECT_LT(one.hermiticity_error(), 1e-12);
    }
}

TEST(AveragedChannel, SingleTermIsExactEvolution) {
    const mq::Hamiltonian h({{0.8, mq::PauliString::from_text("XY")}});
    const auto psi0 = mq::StateVector::from_bits("00");
    const auto rho = mq::iterate_channel(h, 1.3, 7, mq::DensityMatrix::from_pure(psi0));
    const auto psi = mq::exact_evolution(h, 1.3, psi0);
    const Eigen::VectorXcd v = oracle::to_vec(psi);
    EXPECT_LT(oracle::max_abs(rho.to_eigen(), v * v.adjoint()), 1e-12);
}

TEST(AveragedChannel, SerialAndParallelAgreeBitwise) {
    const auto h = mq::build_heisenberg_xyz(5, 1.0, 0.5, 0.8);
    const auto rho0 = mq::DensityMatrix::from_pure(mq::StateVector::from_bits("01100"));
    const auto a = mq::iterate_channel(h, 1.0, 40, rho0, mq::Execution::Serial);
    const auto b = mq::iterate_channel(h, 1.0, 40, rho0, mq::Execution::Parallel);
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        ASSERT_EQ(a.data()[k], b.data()[k]);
    }
}

TEST(AveragedChannel, RejectsAliasing) {
    const auto h = two_term();
    mq::AveragedChannel ch(h, 0.1);
    mq::DensityMatrix rho(2);
    EXPECT_THROW(ch.apply(rho, rho), std::invalid_argument);
}

TEST(ChannelProbability, ApproachesExactValue) {
    const auto h = mq::build_heisenberg_xyz(4, 1.0, 0.5, 0.8);
    const mq::Observable obs(mq::PauliString::from_text("ZIII"));
    const auto psi0 = mq::StateVector::from_bits("0000");
    const double p_inf = 0.5 * (1.0 + mq::expectation(obs, mq::exact_evolution(h, 1.0, psi0)));
    double prev_gap = 1.0;
    for (std::size_t n : {64, 128, 256, 512}) {
        const double p = mq::channel_probability(h, obs, mq::DensityMatrix::from_pure(psi0), n, 1.0);
        const double gap = std::abs(p - p_inf);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
        EXPECT_LT(gap, prev_gap);
        EXPECT_LT(gap, mq::bias_bound(h.one_norm(), 1.0, n));
        prev_gap = gap;
    }
}

TEST(Costs, BiasBoundAndStandardCost) {
    EXPECT_DOUBLE_EQ(mq::bias_bound(11.5, 1.0, 128), 2.0 * 11.5 * 11.5 / 128.0);
    EXPECT_THROW(mq::bias_bound(1.0, 1.0, 0), std::invalid_argument);
    const auto c = mq::std_cost(0.01, 21.1, 0.75);
    EXPECT_DOUBLE_EQ(c.gate_count, std::ceil(std::sqrt(2.0) * 21.1 / 0.01));
    EXPECT_DOUBLE_EQ(c.samples, std::ceil(2.0 * 0.75 / 1e-4));
    EXPECT_DOUBLE_EQ(c.total_gates, c.gate_count * c.samples);
    EXPECT_THROW(mq::std_cost(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST(RunQDrift, MeanMatchesChannelAndIsThreadIndependent) {
    const auto h = mq::build_heisenberg_xyz(4, 1.0, 0.5, 0.8);
    const mq::Observable obs(mq::PauliString::from_text("ZIII"));
    const auto psi0 = mq::StateVector::from_bits("0000");
    const std::size_t n = 64;
    const double channel = 2.0 * mq::channel_probability(h, obs, mq::DensityMatrix::from_pure(psi0), n, 1.0) - 1.0;
    const mq::RngStream rng{99, 0};
    const auto par = mq::run_qdrift(h, obs, psi0, 1.0, n, 4000, rng, mq::Measurement::Expectation);
    const auto ser =
        mq::run_qdrift(h, obs, psi0, 1.0, n, 4000, rng, mq::Measurement::Expectation, mq::Execution::Serial);
    EXPECT_EQ(par.summary.mean, ser.summary.mean);
    EXPECT_EQ(par.summary.variance, ser.summary.variance);
    EXPECT_NEAR(par.summary.mean, channel, 5 * par.summary.standard_error());
    EXPECT_EQ(par.total_gates, 64u * 4000u);

    const auto shots = mq::run_qdrift(h, obs, psi0, 1.0, n, 4000, rng, mq::Measurement::SingleShot);
    EXPECT_NEAR(shots.summary.mean, channel, 5 * shots.summary.standard_error());
    EXPECT_NEAR(shots.summary.variance, 1.0 - shots.summary.mean * shots.summary.mean, 0.02);
}

TEST(Summarize, UnbiasedVariance) {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = mq::summarize(v);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.standard_error(), std::sqrt(5.0 / 3.0 / 4.0));
    EXPECT_EQ(mq::summarize(std::vector<double>{3.0}).variance, 0.0);
}

TEST(Threads, ResolveCount) {
    EXPECT_EQ(mq::resolve_thread_count(3), 3);
    EXPECT_GE(mq::resolve_thread_count(0), 1);
}

}  // namespace
