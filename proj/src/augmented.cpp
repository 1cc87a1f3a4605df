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

#include "mlmc_qdrift/augmented.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace mlmc_qdrift {

namespace {

Eigen::MatrixXcd exp_pauli_dense(const PauliString& p, double theta, std::size_t cap) {
    const Eigen::MatrixXcd dense = to_dense(p, cap);
    const auto d = dense.rows();
    return std::cos(theta) * Eigen::MatrixXcd::Identity(d, d) - Complex{0.0, std::sin(theta)} * dense;
}

Eigen::MatrixXcd kron2(const Eigen::Matrix2cd& block, const Eigen::MatrixXcd& m) {
    const auto d = m.rows();
    Eigen::MatrixXcd out(2 * d, 2 * d);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.block(r * d, c * d, d, d) = block(r, c) * m;
        }
    }
    return out;
}

// Eigenvalues of [[z^-2, z^-1], [z^-1, 0]] are (z^-2 +- sqrt(z^-4 + 4 z^-2)) / 2.
double block_factor_norm(double zeta) {
    const double a = 1.0 / (zeta * zeta);
    return 0.5 * (a + std::sqrt(a * a + 4.0 * a));
}

}  // namespace

Eigen::VectorXcd AugmentedState::to_eigen() const {
    const auto d = static_cast<Eigen::Index>(coarse_block.dim());
    Eigen::VectorXcd v(2 * d);
    v.head(d) = error_block.to_eigen();
    v.tail(d) = coarse_block.to_eigen();
    return v;
}

double BlockObservable::norm_bound() const { return (1.0 / zeta + 1.0 / (zeta * zeta)) * base.norm_bound; }

double BlockObservable::exact_norm() const { return block_factor_norm(zeta) * base.norm_bound; }

Eigen::MatrixXcd BlockObservable::dense(std::size_t qubit_cap) const {
    Eigen::Matrix2cd factor;
    factor << 1.0 / (zeta * zeta), 1.0 / zeta, 1.0 / zeta, 0.0;
    return kron2(factor, to_dense(base.pauli, qubit_cap));
}

double zeta(std::size_t level, const LevelHierarchy& hier, double c) {
    if (!(c > 0.0)) {
        throw std::invalid_argument("zeta: scaling constant c must be positive");
    }
    return c / std::sqrt(hier.tau(level));
}

AugmentedState make_augmented(const CoupledPaths& paths, double zeta) {
    AugmentedState chi;
    chi.zeta = zeta;
    chi.error_block = paths.fine - paths.coarse;
    chi.error_block *= zeta;
    chi.coarse_block = paths.coarse;
    chi.squared_norm = 1.0 + chi.error_block.norm_squared();
    return chi;
}

AugmentedState evolve_augmented(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                                const IndexSequence& seq, const StateVector& psi0, double c) {
    return make_augmented(propagate_coupled(h, hier, level, seq, psi0), zeta(level, hier, c));
}

Eigen::MatrixXcd build_block_step(const PauliString& a, const PauliString& b, double tau, double zeta,
                                  double sign_a, double sign_b, std::size_t qubit_cap) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("build_block_step: Pauli strings act on different registers");
    }
    const Eigen::MatrixXcd u_fine = exp_pauli_dense(b, sign_b * tau, qubit_cap) * exp_pauli_dense(a, sign_a * tau, qubit_cap);
    const Eigen::MatrixXcd u_coarse = exp_pauli_dense(a, sign_a * 2.0 * tau, qubit_cap);
    const auto d = u_fine.rows();
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    w.topLeftCorner(d, d) = u_fine;
    w.topRightCorner(d, d) = zeta * (u_fine - u_coarse);
    w.bottomRightCorner(d, d) = u_coarse;
    return w;
}

double block_expectation(const AugmentedState& chi, const Observable& obs) {
    const double z = chi.zeta;
    return expectation(obs.pauli, chi.error_block) / (z * z) +
           2.0 / z * real_matrix_element(obs.pauli, chi.error_block, chi.coarse_block);
}

ShotNoiseVariance shot_noise_variance(const AugmentedState& chi, const Observable& obs) {
    ShotNoiseVariance out;
    const double y = block_expectation(chi, obs);
    const double e2 = chi.error_norm() * chi.error_norm();
    out.second_moment = e2 + 1.0 / (chi.zeta * chi.zeta);
    out.raw = chi.squared_norm * out.second_moment - y * y;
    out.clamped = out.raw < 0.0;
    out.variance = out.clamped ? 0.0 : out.raw;
    const double op_norm = BlockObservable{obs, chi.zeta}.exact_norm();
    out.worst_case = chi.squared_norm * chi.squared_norm * op_norm * op_norm;
    return out;
}

ShotNoiseVariance shot_noise_variance_dense(const AugmentedState& chi, const Eigen::MatrixXcd& observable) {
    const auto d = static_cast<Eigen::Index>(chi.coarse_block.dim());
    if (observable.rows() != d || observable.cols() != d) {
        throw std::invalid_argument("shot_noise_variance_dense: observable dimension mismatch");
    }
    Eigen::Matrix2cd factor;
    factor << 1.0 / (chi.zeta * chi.zeta), 1.0 / chi.zeta, 1.0 / chi.zeta, 0.0;
    const Eigen::MatrixXcd block = kron2(factor, observable);
    const Eigen::VectorXcd v = chi.to_eigen();
    const Eigen::VectorXcd ov = block * v;
    ShotNoiseVariance out;
    const double y = v.dot(ov).real();
    out.second_moment = ov.squaredNorm();
    out.raw = chi.squared_norm * out.second_moment - y * y;
    out.clamped = out.raw < 0.0;
    out.variance = out.clamped ? 0.0 : out.raw;
    const double op_norm = hermitian_operator_norm(block);
    out.worst_case = chi.squared_norm * chi.squared_norm * op_norm * op_norm;
    return out;
}

NormDiagnostics check_norm_bounds(const AugmentedState& chi, const Observable& obs, double error_constant,
                                  double tau, double c, bool dense_observable_norm) {
    NormDiagnostics out;
    const BlockObservable block{obs, chi.zeta};
    out.squared_norm = chi.squared_norm;
    out.norm_upper_bound = 1.0 + c * c * error_constant * error_constant * tau;
    out.norm_lower_ok = chi.squared_norm >= 1.0;
    out.norm_upper_ok = chi.squared_norm <= out.norm_upper_bound;
    out.observable_norm = dense_observable_norm ? hermitian_operator_norm(block.dense()) : block.exact_norm();
    out.observable_norm_bound = block.norm_bound();
    out.observable_bound_ok = out.observable_norm <= out.observable_norm_bound * (1.0 + 1e-12);
    out.error_over_tau = tau > 0.0 ? chi.error_norm() / tau : 0.0;
    return out;
}

BlockGenerators block_generator_norms(const PauliString& a, const PauliString& b, double tau, double zeta,
                                      double sign_a, double sign_b, std::size_t qubit_cap) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("block_generator_norms: Pauli strings act on different registers");
    }
    const Eigen::MatrixXcd h_a = sign_a * to_dense(a, qubit_cap);
    const Eigen::MatrixXcd h_b = sign_b * to_dense(b, qubit_cap);
    const Eigen::MatrixXcd delta = h_b - h_a;
    const auto d = h_a.rows();
    const Complex i{0.0, 1.0};

    Eigen::Matrix2cd proj0, proj1, pauli_x, pauli_y;
    proj0 << 1, 0, 0, 0;
    proj1 << 0, 0, 0, 1;
    pauli_x << 0, 1, 1, 0;
    pauli_y << 0, -i, i, 0;

    BlockGenerators out;
    out.tau = tau;
    out.zeta = zeta;
    out.hermitian = tau * (kron2(proj0, h_b) + kron2(proj1, h_a) + (zeta / 2.0) * kron2(pauli_x, delta));
    out.antihermitian = (tau * zeta / 2.0) * kron2(pauli_y, delta);

    out.raw = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
    out.raw.topLeftCorner(d, d) = -i * tau * h_b;
    out.raw.topRightCorner(d, d) = -i * tau * zeta * delta;
    out.raw.bottomRightCorner(d, d) = -i * tau * h_a;

    out.hermitian_norm = hermitian_operator_norm(out.hermitian);
    out.antihermitian_norm = hermitian_operator_norm(out.antihermitian);
    out.delta_norm = hermitian_operator_norm(delta);
    out.reconstruction_error = (-i * out.hermitian + out.antihermitian - out.raw).cwiseAbs().maxCoeff();
    return out;
}

double hermitian_operator_norm(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace mlmc_qdrift
