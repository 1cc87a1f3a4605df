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

#include "mlmc_qdrift/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace mlmc_qdrift {

Hamiltonian::Hamiltonian(std::vector<HamiltonianTerm> terms) {
    for (auto& term : terms) {
        if (term.coeff == 0.0) {
            continue;
        }
        if (!std::isfinite(term.coeff)) {
            throw std::invalid_argument("Hamiltonian coefficient must be finite");
        }
        if (term.pauli.is_identity()) {
            throw std::invalid_argument("identity term \"" + term.pauli.str() +
                                        "\" only contributes a global phase; remove it");
        }
        if (!terms_.empty() && term.pauli.num_qubits() != terms_.front().pauli.num_qubits()) {
            throw std::invalid_argument("Hamiltonian terms act on different register sizes");
        }
        terms_.push_back(std::move(term));
    }
    if (terms_.empty()) {
        throw std::invalid_argument("Hamiltonian has no nonzero terms");
    }
    num_qubits_ = terms_.front().pauli.num_qubits();
    for (const auto& term : terms_) {
        one_norm_ += std::abs(term.coeff);
    }
    probs_.reserve(terms_.size());
    cumulative_.reserve(terms_.size());
    double running = 0.0;
    for (const auto& term : terms_) {
        probs_.push_back(std::abs(term.coeff) / one_norm_);
        running += probs_.back();
        cumulative_.push_back(running);
    }
    cumulative_.back() = 1.0;
}

Hamiltonian build_heisenberg_xyz(std::size_t num_qubits, double jx, double jy, double jz) {
    if (num_qubits < 2) {
        throw std::invalid_argument("Heisenberg chain needs at least 2 qubits");
    }
    std::vector<HamiltonianTerm> terms;
    const std::pair<Pauli, double> couplings[] = {{Pauli::X, jx}, {Pauli::Y, jy}, {Pauli::Z, jz}};
    for (std::size_t bond = 0; bond + 1 < num_qubits; ++bond) {
        for (const auto& [letter, coupling] : couplings) {
            std::vector<Pauli> letters(num_qubits, Pauli::I);
            letters[bond] = letter;
            letters[bond + 1] = letter;
            terms.push_back({coupling, PauliString(std::move(letters))});
        }
    }
    return Hamiltonian(std::move(terms));
}

std::vector<double> sampling_distribution(const Hamiltonian& h) { return h.probs(); }

Eigen::MatrixXcd to_dense(const Hamiltonian& h, std::size_t qubit_cap) {
    if (h.num_qubits() > qubit_cap) {
        throw std::invalid_argument("Hamiltonian on " + std::to_string(h.num_qubits()) +
                                    " qubits exceeds the dense cap of " + std::to_string(qubit_cap));
    }
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << h.num_qubits());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& term : h.terms()) {
        m += term.coeff * to_dense(term.pauli, qubit_cap);
    }
    return m;
}

StateVector exact_evolution(const Hamiltonian& h, double t, const StateVector& psi0, std::size_t qubit_cap) {
    if (psi0.num_qubits() != h.num_qubits()) {
        throw std::invalid_argument("exact_evolution: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_dense(h, qubit_cap));
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("exact_evolution: eigendecomposition failed");
    }
    const Eigen::MatrixXcd& v = eig.eigenvectors();
    Eigen::VectorXcd coeffs = v.adjoint() * psi0.to_eigen();
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        coeffs(k) *= std::polar(1.0, -eig.eigenvalues()(k) * t);
    }
    return StateVector::from_eigen(psi0.num_qubits(), v * coeffs);
}

double real_matrix_element(const PauliString& pauli, const StateVector& a, const StateVector& b) {
    if (pauli.num_qubits() != a.num_qubits() || a.dim() != b.dim()) {
        throw std::invalid_argument("real_matrix_element: dimension mismatch");
    }
    const std::uint64_t flip = pauli.flip_mask();
    Complex acc{0.0, 0.0};
    for (std::uint64_t r = 0; r < a.dim(); ++r) {
        acc += std::conj(a[r]) * pauli.phase(r ^ flip) * b[r ^ flip];
    }
    return acc.real();
}

double expectation(const PauliString& pauli, const StateVector& psi) {
    if (pauli.num_qubits() != psi.num_qubits()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    if (pauli.flip_mask() == 0) {
        // Diagonal observable: sum of +-|amp|^2.
        double acc = 0.0;
        for (std::uint64_t r = 0; r < psi.dim(); ++r) {
            double w = std::norm(psi[r]);
            acc += (std::popcount(r & pauli.phase_mask()) & 1) ? -w : w;
        }
        return acc;
    }
    return real_matrix_element(pauli, psi, psi);
}

double expectation(const Observable& obs, const StateVector& psi) { return expectation(obs.pauli, psi); }

double expectation(const Observable& obs, const DensityMatrix& rho) {
    if (obs.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    // Tr(P rho) = sum_c <c|P rho|c> = sum_c phase(c ^ flip) rho(c ^ flip, c).
    const std::uint64_t flip = obs.pauli.flip_mask();
    Complex acc{0.0, 0.0};
    for (std::uint64_t c = 0; c < rho.dim(); ++c) {
        acc += obs.pauli.phase(c ^ flip) * rho(c ^ flip, c);
    }
    return acc.real();
}

}  // namespace mlmc_qdrift
