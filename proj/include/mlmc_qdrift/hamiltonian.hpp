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
#include <vector>

#include "mlmc_qdrift/pauli.hpp"

namespace mlmc_qdrift {

struct HamiltonianTerm {
    double coeff;  // signed weight; the sign is absorbed into the gate angle
    PauliString pauli;
};

/// Weighted Pauli sum H = sum_j h_j P_j with one-norm lambda = sum_j |h_j| and
/// qDRIFT sampling probabilities p_j = |h_j| / lambda. Immutable once built.
///
/// Zero-coefficient terms are dropped; identity strings and mixed register
/// sizes are rejected.
class Hamiltonian {
  public:
    explicit Hamiltonian(std::vector<HamiltonianTerm> terms);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t num_terms() const { return terms_.size(); }
    const std::vector<HamiltonianTerm>& terms() const { return terms_; }
    const HamiltonianTerm& term(std::size_t j) const { return terms_[j]; }

    double one_norm() const { return one_norm_; }
    const std::vector<double>& probs() const { return probs_; }
    /// Running sums of probs(); the last entry is exactly 1.
    const std::vector<double>& cumulative() const { return cumulative_; }
    /// +1 or -1 for term j.
    double sign(std::size_t j) const { return terms_[j].coeff < 0 ? -1.0 : 1.0; }

  private:
    std::vector<HamiltonianTerm> terms_;
    std::size_t num_qubits_ = 0;
    double one_norm_ = 0.0;
    std::vector<double> probs_;
    std::vector<double> cumulative_;
};

/// A Pauli observable O with ||O|| = 1. The +1 projector is (I + O) / 2.
struct Observable {
    PauliString pauli;
    double norm_bound = 1.0;

    explicit Observable(PauliString p) : pauli(std::move(p)) {}
    std::size_t num_qubits() const { return pauli.num_qubits(); }
};

/// H = sum_j Jx X_j X_{j+1} + Jy Y_j Y_{j+1} + Jz Z_j Z_{j+1}, bonds j = 0..n-2.
/// Terms are ordered bond-major (XX, YY, ZZ per bond); zero couplings are dropped.
Hamiltonian build_heisenberg_xyz(std::size_t num_qubits, double jx, double jy, double jz);

std::vector<double> sampling_distribution(const Hamiltonian& h);

/// Dense sum_j h_j P_j.
Eigen::MatrixXcd to_dense(const Hamiltonian& h, std::size_t qubit_cap = kDefaultDenseQubitCap);

/// e^{-iHt}|psi0> via eigendecomposition of the dense Hermitian matrix.
StateVector exact_evolution(const Hamiltonian& h, double t, const StateVector& psi0,
                            std::size_t qubit_cap = kDefaultDenseQubitCap);

/// Raw quadratic form <psi|O|psi>; no normalization.
double expectation(const Observable& obs, const StateVector& psi);
double expectation(const PauliString& pauli, const StateVector& psi);

/// Re <a|P|b>.
double real_matrix_element(const PauliString& pauli, const StateVector& a, const StateVector& b);

/// Tr(O rho).
double expectation(const Observable& obs, const DensityMatrix& rho);

}  // namespace mlmc_qdrift
