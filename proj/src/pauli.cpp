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

#include "mlmc_qdrift/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlmc_qdrift {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void require_dim(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(expected) +
                                    " vs " + std::to_string(got) + ")");
    }
}

}  // namespace

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) {
        throw std::invalid_argument("PauliString needs at least one qubit");
    }
    if (letters_.size() > 62) {
        throw std::invalid_argument("PauliString supports at most 62 qubits");
    }
    int num_y = 0;
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        std::uint64_t bit = std::uint64_t{1} << q;
        switch (letters_[q]) {
            case Pauli::I:
                break;
            case Pauli::X:
                flip_mask_ |= bit;
                break;
            case Pauli::Y:
                flip_mask_ |= bit;
                phase_mask_ |= bit;
                ++num_y;
                break;
            case Pauli::Z:
                phase_mask_ |= bit;
                break;
        }
    }
    y_phase_ = num_y & 3;
}

PauliString PauliString::identity(std::size_t num_qubits) {
    return PauliString(std::vector<Pauli>(num_qubits, Pauli::I));
}

PauliString PauliString::from_text(std::string_view text) {
    std::vector<Pauli> letters;
    letters.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case 'I':
            case '_':
                letters.push_back(Pauli::I);
                break;
            case 'X':
                letters.push_back(Pauli::X);
                break;
            case 'Y':
                letters.push_back(Pauli::Y);
                break;
            case 'Z':
                letters.push_back(Pauli::Z);
                break;
            default:
                throw std::invalid_argument("invalid Pauli letter '" + std::string(1, ch) + "' in \"" +
                                            std::string(text) + "\"");
        }
    }
    return PauliString(std::move(letters));
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(letters_.size());
    for (Pauli p : letters_) {
        out.push_back("IXYZ"[static_cast<int>(p)]);
    }
    return out;
}

Complex PauliString::phase(std::uint64_t basis_index) const {
    Complex ph = kIPowers[y_phase_];
    return (std::popcount(basis_index & phase_mask_) & 1) ? -ph : ph;
}

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxStateQubits) {
        throw std::invalid_argument("StateVector qubit count out of range: " + std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits == 0 || num_qubits > kMaxStateQubits) {
        throw std::invalid_argument("StateVector qubit count out of range: " + std::to_string(num_qubits));
    }
    require_dim(std::size_t{1} << num_qubits, amps_.size(), "StateVector");
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
    StateVector out(num_qubits);
    if (index >= out.dim()) {
        throw std::out_of_range("basis index out of range");
    }
    out.amps_[0] = 0.0;
    out.amps_[index] = 1.0;
    return out;
}

StateVector StateVector::from_bits(std::string_view bits) {
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') {
            index |= std::uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw std::invalid_argument("basis bit string must contain only 0/1: \"" + std::string(bits) + "\"");
        }
    }
    return basis(bits.size(), index);
}

double StateVector::norm_squared() const {
    double acc = 0.0;
    for (const Complex& a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

Complex StateVector::inner(const StateVector& other) const {
    require_dim(dim(), other.dim(), "inner");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

StateVector& StateVector::operator+=(const StateVector& other) {
    require_dim(dim(), other.dim(), "operator+=");
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] += other.amps_[i];
    }
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
    require_dim(dim(), other.dim(), "operator-=");
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] -= other.amps_[i];
    }
    return *this;
}

StateVector& StateVector::operator*=(Complex scale) {
    for (Complex& a : amps_) {
        a *= scale;
    }
    return *this;
}

Eigen::VectorXcd StateVector::to_eigen() const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = amps_[i];
    }
    return v;
}

StateVector StateVector::from_eigen(std::size_t num_qubits, const Eigen::VectorXcd& v) {
    std::vector<Complex> amps(v.data(), v.data() + v.size());
    return StateVector(num_qubits, std::move(amps));
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(Complex scale, StateVector a) { return a *= scale; }

DensityMatrix::DensityMatrix(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0 || num_qubits > 14) {
        throw std::invalid_argument("DensityMatrix qubit count out of range: " + std::to_string(num_qubits));
    }
    dim_ = std::size_t{1} << num_qubits;
    data_.assign(dim_ * dim_, Complex{0.0, 0.0});
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    DensityMatrix rho(psi.num_qubits());
    for (std::size_t r = 0; r < rho.dim_; ++r) {
        for (std::size_t c = 0; c < rho.dim_; ++c) {
            rho(r, c) = psi[r] * std::conj(psi[c]);
        }
    }
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t num_qubits) {
    DensityMatrix rho(num_qubits);
    double w = 1.0 / static_cast<double>(rho.dim_);
    for (std::size_t r = 0; r < rho.dim_; ++r) {
        rho(r, r) = w;
    }
    return rho;
}

DensityMatrix DensityMatrix::from_eigen(std::size_t num_qubits, const Eigen::MatrixXcd& m) {
    DensityMatrix rho(num_qubits);
    require_dim(rho.dim_, static_cast<std::size_t>(m.rows()), "DensityMatrix::from_eigen");
    require_dim(rho.dim_, static_cast<std::size_t>(m.cols()), "DensityMatrix::from_eigen");
    for (std::size_t r = 0; r < rho.dim_; ++r) {
        for (std::size_t c = 0; c < rho.dim_; ++c) {
            rho(r, c) = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return rho;
}

Complex DensityMatrix::trace() const {
    Complex acc{0.0, 0.0};
    for (std::size_t r = 0; r < dim_; ++r) {
        acc += (*this)(r, r);
    }
    return acc;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = r; c < dim_; ++c) {
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return worst;
}

Eigen::MatrixXcd DensityMatrix::to_eigen() const {
    auto n = static_cast<Eigen::Index>(dim_);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = data_[static_cast<std::size_t>(r) * dim_ + static_cast<std::size_t>(c)];
        }
    }
    return m;
}

StateVector apply_pauli(const PauliString& pauli, const StateVector& psi) {
    require_dim(pauli.num_qubits(), psi.num_qubits(), "apply_pauli");
    StateVector out = psi;
    const std::uint64_t flip = pauli.flip_mask();
    for (std::uint64_t r = 0; r < psi.dim(); ++r) {
        out[r] = pauli.phase(r ^ flip) * psi[r ^ flip];
    }
    return out;
}

void apply_exp_pauli_inplace(const PauliString& pauli, double theta, std::span<Complex> amps) {
    require_dim(std::size_t{1} << pauli.num_qubits(), amps.size(), "apply_exp_pauli");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const std::uint64_t flip = pauli.flip_mask();
    const std::uint64_t dim = amps.size();
    // -i sin(theta) * phase(a), folded into one complex factor per basis index.
    const Complex minus_i_s = Complex{0.0, -s} * pauli.phase(0);
    const std::uint64_t phase_mask = pauli.phase_mask();
    auto factor = [&](std::uint64_t a) {
        return (std::popcount(a & phase_mask) & 1) ? -minus_i_s : minus_i_s;
    };
    if (flip == 0) {
        for (std::uint64_t r = 0; r < dim; ++r) {
            amps[r] *= c + factor(r);
        }
        return;
    }
    // Pair r with r ^ flip; visit each pair once through its smaller member.
    const std::uint64_t top = std::uint64_t{1} << (std::bit_width(flip) - 1);
    for (std::uint64_t r = 0; r < dim; ++r) {
        if (r & top) {
            continue;
        }
        const std::uint64_t q = r ^ flip;
        const Complex ar = amps[r];
        const Complex aq = amps[q];
        amps[r] = c * ar + factor(q) * aq;
        amps[q] = c * aq + factor(r) * ar;
    }
}

StateVector apply_exp_pauli(const PauliString& pauli, double theta, const StateVector& psi) {
    require_dim(pauli.num_qubits(), psi.num_qubits(), "apply_exp_pauli");
    StateVector out = psi;
    apply_exp_pauli_inplace(pauli, theta, out.amplitudes());
    return out;
}

DensityMatrix conjugate_exp_pauli(const PauliString& pauli, double theta, const DensityMatrix& rho) {
    require_dim(pauli.num_qubits(), rho.num_qubits(), "conjugate_exp_pauli");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double cc = c * c;
    const double ss = s * s;
    const Complex minus_i_sc{0.0, -s * c};
    const std::uint64_t flip = pauli.flip_mask();
    const std::size_t d = rho.dim();
    DensityMatrix out(rho.num_qubits());
    for (std::uint64_t r = 0; r < d; ++r) {
        const std::uint64_t rf = r ^ flip;
        const Complex ph_r = pauli.phase(rf);
        for (std::uint64_t col = 0; col < d; ++col) {
            const std::uint64_t cf = col ^ flip;
            const Complex ph_c = pauli.phase(col);
            const Complex p_rho = ph_r * rho(rf, col);
            const Complex rho_p = rho(r, cf) * ph_c;
            const Complex p_rho_p = ph_r * ph_c * rho(rf, cf);
            out(r, col) = cc * rho(r, col) + minus_i_sc * (p_rho - rho_p) + ss * p_rho_p;
        }
    }
    return out;
}

Eigen::MatrixXcd to_dense(const PauliString& pauli, std::size_t qubit_cap) {
    if (pauli.num_qubits() > qubit_cap) {
        throw std::invalid_argument("to_dense: " + std::to_string(pauli.num_qubits()) +
                                    " qubits exceeds the dense cap of " + std::to_string(qubit_cap));
    }
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << pauli.num_qubits());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(d); ++col) {
        m(static_cast<Eigen::Index>(col ^ pauli.flip_mask()), static_cast<Eigen::Index>(col)) = pauli.phase(col);
    }
    return m;
}

}  // namespace mlmc_qdrift
