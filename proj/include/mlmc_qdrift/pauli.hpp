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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mlmc_qdrift {

using Complex = std::complex<double>;

/// Largest register handled by the dense (matrix) oracles.
inline constexpr std::size_t kDefaultDenseQubitCap = 8;

/// Largest register handled by the statevector kernels.
inline constexpr std::size_t kMaxStateQubits = 30;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// A sign-free tensor product of single-qubit Paulis.
///
/// Basis convention: qubit q is bit q of the computational-basis index, and the
/// text form lists qubit 0 first ("XZI" = X on qubit 0, Z on qubit 1). The
/// string acts on basis states as P|a> = phase(a) |a ^ flip_mask()>, with
/// phase(a) = i^{#Y} * (-1)^{popcount(a & phase_mask())}.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> letters);

    static PauliString identity(std::size_t num_qubits);
    static PauliString from_text(std::string_view text);

    std::size_t num_qubits() const { return letters_.size(); }
    Pauli operator[](std::size_t q) const { return letters_[q]; }
    const std::vector<Pauli>& letters() const { return letters_; }

    std::string str() const;
    bool is_identity() const { return flip_mask_ == 0 && phase_mask_ == 0; }

    std::uint64_t flip_mask() const { return flip_mask_; }
    std::uint64_t phase_mask() const { return phase_mask_; }
    /// Number of Y letters mod 4, i.e. the exponent of the global i^{#Y}.
    int y_phase() const { return y_phase_; }

    Complex phase(std::uint64_t basis_index) const;

    bool operator==(const PauliString& other) const { return letters_ == other.letters_; }

  private:
    std::vector<Pauli> letters_;
    std::uint64_t flip_mask_ = 0;
    std::uint64_t phase_mask_ = 0;
    int y_phase_ = 0;
};

/// Pure state amplitudes on 2^num_qubits basis states. Normalization is not
/// enforced: difference states live here too.
class StateVector {
  public:
    StateVector() = default;
    /// |0...0>.
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t num_qubits, std::uint64_t index);
    /// Basis state from a bit string with qubit 0 first, e.g. "100000".
    static StateVector from_bits(std::string_view bits);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }

    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    std::span<Complex> amplitudes() { return amps_; }
    std::span<const Complex> amplitudes() const { return amps_; }

    double norm_squared() const;
    double norm() const;
    /// <this|other>.
    Complex inner(const StateVector& other) const;

    StateVector& operator+=(const StateVector& other);
    StateVector& operator-=(const StateVector& other);
    StateVector& operator*=(Complex scale);

    Eigen::VectorXcd to_eigen() const;
    static StateVector from_eigen(std::size_t num_qubits, const Eigen::VectorXcd& v);

  private:
    std::size_t num_qubits_ = 0;
    std::vector<Complex> amps_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(Complex scale, StateVector a);

/// Row-major d x d complex matrix used for averaged-channel iteration.
class DensityMatrix {
  public:
    DensityMatrix() = default;
    explicit DensityMatrix(std::size_t num_qubits);

    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(std::size_t num_qubits);
    static DensityMatrix from_eigen(std::size_t num_qubits, const Eigen::MatrixXcd& m);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<Complex> data() { return data_; }
    std::span<const Complex> data() const { return data_; }

    Complex trace() const;
    /// max |rho - rho^dagger| entry.
    double hermiticity_error() const;

    Eigen::MatrixXcd to_eigen() const;

  private:
    std::size_t num_qubits_ = 0;
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// P|psi>.
StateVector apply_pauli(const PauliString& pauli, const StateVector& psi);

/// exp(-i theta P)|psi> = cos(theta)|psi> - i sin(theta) P|psi>.
StateVector apply_exp_pauli(const PauliString& pauli, double theta, const StateVector& psi);

/// In-place variant used by trajectory loops. `amps.size()` must be 2^n.
void apply_exp_pauli_inplace(const PauliString& pauli, double theta, std::span<Complex> amps);

/// exp(-i theta P) rho exp(+i theta P) via
/// cos^2 rho - i sin cos [P, rho] + sin^2 P rho P.
DensityMatrix conjugate_exp_pauli(const PauliString& pauli, double theta, const DensityMatrix& rho);

/// Dense 2^n x 2^n matrix of the string, consistent with the basis convention
/// above (qubit q <-> bit q, so the Kronecker factor of qubit 0 is rightmost).
Eigen::MatrixXcd to_dense(const PauliString& pauli, std::size_t qubit_cap = kDefaultDenseQubitCap);

}  // namespace mlmc_qdrift
