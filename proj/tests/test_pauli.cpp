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
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mlmc_qdrift/pauli.hpp"
#include "oracles.hpp"

namespace mq = mlmc_qdrift;

namespace {

TEST(PauliString, TextRoundTrip) {
    for (const std::string& s : {"XXIIII", "IYZ", "Z", "XYZI"}) {
        EXPECT_EQ(mq::PauliString::from_text(s).str(), s);
    }
    EXPECT_EQ(mq::PauliString::from_text("X_Z").str(), "XIZ");
}

TEST(PauliString, RejectsBadInput) {
    EXPECT_THROW(mq::PauliString::from_text("XQ"), std::invalid_argument);
    EXPECT_THROW(mq::PauliString::from_text(""), std::invalid_argument);
    EXPECT_THROW(mq::PauliString::from_text(std::string(63, 'X')), std::invalid_argument);
}

TEST(PauliString, MasksFollowQubitZeroFirst) {
    const auto p = mq::PauliString::from_text("XYZI");
    EXPECT_EQ(p.flip_mask(), 0b0011u);
    EXPECT_EQ(p.phase_mask(), 0b0110u);
    EXPECT_EQ(p.y_phase(), 1);
    EXPECT_TRUE(mq::PauliString::identity(3).is_identity());
}

TEST(StateVector, FromBitsPutsQubitZeroInLowBit) {
    const auto psi = mq::StateVector::from_bits("100");
    EXPECT_EQ(psi[1], mq::Complex(1.0, 0.0));
    EXPECT_THROW(mq::StateVector::from_bits("10a"), std::invalid_argument);
}

TEST(ApplyPauli, XFlipsQubitZero) {
    const auto out = mq::apply_pauli(mq::PauliString::from_text("XI"), mq::StateVector(2));
    EXPECT_EQ(out[1], mq::Complex(1.0, 0.0));
    EXPECT_EQ(out[0], mq::Complex(0.0, 0.0));
}

TEST(ApplyPauli, YOnZeroGivesIOne) {
    const auto out = mq::apply_pauli(mq::PauliString::from_text("Y"), mq::StateVector(1));
    EXPECT_NEAR(std::abs(out[1] - mq::Complex(0.0, 1.0)), 0.0, 1e-15);
}

// Dense matrix from the kernel agrees with an independent Kronecker build.
TEST(ToDense, MatchesKroneckerOracleOnAllThreeQubitStrings) {
    for (const std::string& s : oracle::all_paulis(3, true)) {
        const auto dense = mq::to_dense(mq::PauliString::from_text(s));
        EXPECT_LT(oracle::max_abs(dense, oracle::kron_pauli(s)), 1e-15) << s;
    }
}

TEST(ToDense, EnforcesQubitCap) {
    EXPECT_THROW(mq::to_dense(mq::PauliString::from_text("XXXXX"), 4), std::invalid_argument);
}

TEST(ApplyExpPauli, SpecialAngles) {
    const auto x = mq::PauliString::from_text("X");
    const auto zero = mq::StateVector(1);
    // theta = 0 is the identity.
    EXPECT_LT(oracle::max_abs(oracle::to_vec(mq::apply_exp_pauli(x, 0.0, zero)), oracle::to_vec(zero)), 1e-15);
    // theta = pi/2 gives -i X.
    const auto half = mq::apply_exp_pauli(x, std::numbers::pi / 2, zero);
    EXPECT_NEAR(std::abs(half[1] - mq::Complex(0.0, -1.0)), 0.0, 1e-15);
    // theta = pi gives -I.
    const auto full = mq::apply_exp_pauli(x, std::numbers::pi, zero);
    EXPECT_NEAR(std::abs(full[0] + 1.0), 0.0, 1e-15);
}

// Property: kernel vs dense exponential on random strings, angles and states.
TEST(ApplyExpPauli, PropertyMatchesDenseExponential) {
    oracle::Gen gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + gen.index(4);
        const std::string s = gen.pauli_text(n);
        const double theta = gen.uniform(-4.0, 4.0);
        const auto psi = gen.state(n);
        const auto out = mq::apply_exp_pauli(mq::PauliString::from_text(s), theta, psi);
        const Eigen::VectorXcd want = oracle::expm_pauli(s, theta) * oracle::to_vec(psi);
        ASSERT_LT(oracle::max_abs(oracle::to_vec(out), want), 1e-12) << s << " theta=" << theta;
    }
}

// Property: unitarity, composition e^{-ia P} e^{-ib P} = e^{-i(a+b) P}.
TEST(ApplyExpPauli, PropertyNormAndComposition) {
    oracle::Gen gen(12);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + gen.index(5);
        const auto p = mq::PauliString::from_text(gen.pauli_text(n));
        const double a = gen.uniform(-3.0, 3.0);
        const double b = gen.uniform(-3.0, 3.0);
        const auto psi = gen.state(n);
        const auto two = mq::apply_exp_pauli(p, b, mq::apply_exp_pauli(p, a, psi));
        const auto one = mq::apply_exp_pauli(p, a + b, psi);
        ASSERT_NEAR(two.norm_squared(), 1.0, 1e-12);
        ASSERT_LT(oracle::max_abs(oracle::to_vec(two), oracle::to_vec(one)), 1e-12);
    }
}

TEST(ApplyExpPauli, RejectsDimensionMismatch) {
    mq::StateVector psi(2);
    EXPECT_THROW(mq::apply_exp_pauli(mq::PauliString::from_text("XXX"), 0.1, psi), std::invalid_argument);
}

// Property: closed-form conjugation equals U rho U^dagger.
TEST(ConjugateExpPauli, PropertyMatchesDenseConjugation) {
    oracle::Gen gen(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + gen.index(3);
        const std::string s = gen.pauli_text(n);
        const double theta = gen.uniform(-2.0, 2.0);
        const Eigen::MatrixXcd rho = gen.density(n);
        const auto out = mq::conjugate_exp_pauli(mq::PauliString::from_text(s), theta,
                                                 mq::DensityMatrix::from_eigen(n, rho));
        const Eigen::MatrixXcd u = oracle::expm_pauli(s, theta);
        ASSERT_LT(oracle::max_abs(out.to_eigen(), u * rho * u.adjoint()), 1e-12) << s;
        ASSERT_NEAR(out.trace().real(), 1.0, 1e-12);
        ASSERT_LT(out.hermiticity_error(), 1e-12);
    }
}

TEST(DensityMatrix, PureAndMixed) {
    const auto rho = mq::DensityMatrix::from_pure(mq::StateVector::from_bits("01"));
    EXPECT_EQ(rho(2, 2), mq::Complex(1.0, 0.0));
    const auto mixed = mq::DensityMatrix::maximally_mixed(2);
    EXPECT_NEAR(mixed.trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(mixed(1, 1).real(), 0.25, 1e-15);
}

}  // namespace
