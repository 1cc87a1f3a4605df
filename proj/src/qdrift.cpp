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

#include "mlmc_qdrift/qdrift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlmc_qdrift {

QDriftConfig QDriftConfig::make(const Hamiltonian& h, double t, std::size_t gate_count) {
    if (gate_count == 0) {
        throw std::invalid_argument("qDRIFT gate count must be positive");
    }
    return {t, gate_count, h.one_norm() * t / static_cast<double>(gate_count)};
}

IndexSequence sample_sequence(RngEngine& rng, const Hamiltonian& h, std::size_t gate_count) {
    IndexSequence seq;
    seq.indices.resize(gate_count);
    const auto& cumulative = h.cumulative();
    for (auto& index : seq.indices) {
        index = rng.draw_index(cumulative);
    }
    return seq;
}

IndexSequence sample_sequence(const RngStream& stream, const Hamiltonian& h, std::size_t gate_count) {
    RngEngine rng(stream);
    return sample_sequence(rng, h, gate_count);
}

void run_trajectory_inplace(const Hamiltonian& h, std::span<const std::uint32_t> indices, double tau,
                            std::span<Complex> amps) {
    for (std::uint32_t j : indices) {
        if (j >= h.num_terms()) {
            throw std::out_of_range("term index " + std::to_string(j) + " out of range for M = " +
                                    std::to_string(h.num_terms()));
        }
        apply_exp_pauli_inplace(h.term(j).pauli, h.sign(j) * tau, amps);
    }
}

StateVector run_trajectory(const Hamiltonian& h, const IndexSequence& seq, double tau, const StateVector& psi0) {
    if (psi0.num_qubits() != h.num_qubits()) {
        throw std::invalid_argument("run_trajectory: dimension mismatch");
    }
    StateVector psi = psi0;
    run_trajectory_inplace(h, seq.indices, tau, psi.amplitudes());
    return psi;
}

AveragedChannel::AveragedChannel(const Hamiltonian& h, double tau) : num_qubits_(h.num_qubits()) {
    const double c = std::cos(tau);
    identity_weight_ = c * c;
    const std::uint64_t dim = std::uint64_t{1} << num_qubits_;
    terms_.reserve(h.num_terms());
    for (std::size_t j = 0; j < h.num_terms(); ++j) {
        const double s = std::sin(h.sign(j) * tau);
        const double p = h.probs()[j];
        Term term{h.term(j).pauli.flip_mask(), Complex{0.0, -p * s * c}, p * s * s, {}};
        term.phases.resize(dim);
        for (std::uint64_t a = 0; a < dim; ++a) {
            term.phases[a] = h.term(j).pauli.phase(a);
        }
        terms_.push_back(std::move(term));
    }
}

void AveragedChannel::apply_row(const DensityMatrix& in, DensityMatrix& out, std::uint64_t row) const {
    const std::size_t d = in.dim();
    const Complex* in_row = &in(row, 0);
    Complex* out_row = &out(row, 0);
    for (std::size_t col = 0; col < d; ++col) {
        out_row[col] = identity_weight_ * in_row[col];
    }
    for (const Term& term : terms_) {
        const std::uint64_t row_f = row ^ term.flip;
        const Complex* in_row_f = &in(row_f, 0);
        const Complex ph_r = term.phases[row_f];
        const Complex* ph = term.phases.data();
        for (std::size_t col = 0; col < d; ++col) {
            const std::size_t col_f = col ^ term.flip;
            // (P rho)[r,c] = ph(r^x) rho[r^x,c];  (rho P)[r,c] = rho[r,c^x] ph(c).
            const Complex p_rho = ph_r * in_row_f[col];
            const Complex rho_p = in_row[col_f] * ph[col];
            const Complex p_rho_p = ph_r * in_row_f[col_f] * ph[col];
            out_row[col] += term.commutator_weight * (p_rho - rho_p) + term.sandwich_weight * p_rho_p;
        }
    }
}

void AveragedChannel::apply(const DensityMatrix& in, DensityMatrix& out, Execution exec) const {
    if (in.num_qubits() != num_qubits_ || out.num_qubits() != num_qubits_) {
        throw std::invalid_argument("AveragedChannel: dimension mismatch");
    }
    if (&in == &out) {
        throw std::invalid_argument("AveragedChannel: input and output must be distinct");
    }
    for_each_index(exec, in.dim(), [&](std::size_t row) { apply_row(in, out, row); });
}

DensityMatrix AveragedChannel::apply(const DensityMatrix& in, Execution exec) const {
    DensityMatrix out(in.num_qubits());
    apply(in, out, exec);
    return out;
}

DensityMatrix averaged_channel_step(const Hamiltonian& h, double tau, const DensityMatrix& rho, Execution exec) {
    return AveragedChannel(h, tau).apply(rho, exec);
}

DensityMatrix iterate_channel(const Hamiltonian& h, double t, std::size_t gate_count, const DensityMatrix& rho0,
                              Execution exec) {
    const QDriftConfig cfg = QDriftConfig::make(h, t, gate_count);
    const AveragedChannel channel(h, cfg.tau);
    DensityMatrix a = rho0;
    DensityMatrix b(rho0.num_qubits());
    for (std::size_t k = 0; k < gate_count; ++k) {
        channel.apply(a, b, exec);
        std::swap(a, b);
    }
    return a;
}

double channel_probability(const Hamiltonian& h, const Observable& obs, const DensityMatrix& rho0,
                           std::size_t gate_count, double t, Execution exec) {
    const DensityMatrix rho = iterate_channel(h, t, gate_count, rho0, exec);
    const double p = 0.5 * (rho.trace().real() + expectation(obs, rho));
    return std::clamp(p, 0.0, 1.0);
}

double bias_bound(double lambda, double t, std::size_t gate_count) {
    if (gate_count == 0) {
        throw std::invalid_argument("bias_bound: N must be >= 1");
    }
    return 2.0 * lambda * lambda * t * t / static_cast<double>(gate_count);
}

StandardCost std_cost(double eps, double bias_constant, double sigma2) {
    if (!(eps > 0.0) || !(bias_constant > 0.0) || sigma2 < 0.0) {
        throw std::invalid_argument("std_cost: need eps > 0, B > 0, sigma2 >= 0");
    }
    StandardCost out;
    out.gate_count = std::ceil(std::sqrt(2.0) * bias_constant / eps);
    out.samples = std::max(1.0, std::ceil(2.0 * sigma2 / (eps * eps)));
    out.total_gates = out.gate_count * out.samples;
    return out;
}

double qdrift_sample(const Hamiltonian& h, const Observable& obs, const StateVector& psi0, std::size_t gate_count,
                     double tau, const RngStream& stream, Measurement measurement) {
    RngEngine rng(stream);
    const IndexSequence seq = sample_sequence(rng, h, gate_count);
    const StateVector psi = run_trajectory(h, seq, tau, psi0);
    const double value = expectation(obs, psi);
    if (measurement == Measurement::Expectation) {
        return value;
    }
    return rng.uniform() < 0.5 * (1.0 + value) ? 1.0 : -1.0;
}

QDriftRun run_qdrift(const Hamiltonian& h, const Observable& obs, const StateVector& psi0, double t,
                     std::size_t gate_count, std::size_t n_samples, const RngStream& rng, Measurement measurement,
                     Execution exec) {
    if (n_samples == 0) {
        throw std::invalid_argument("run_qdrift: need at least one sample");
    }
    QDriftRun out;
    out.config = QDriftConfig::make(h, t, gate_count);
    std::vector<double> values(n_samples);
    for_each_index(exec, n_samples, [&](std::size_t i) {
        values[i] = qdrift_sample(h, obs, psi0, gate_count, out.config.tau, rng.derive(i), measurement);
    });
    out.summary = summarize(values);
    out.total_gates = static_cast<std::uint64_t>(gate_count) * n_samples;
    return out;
}

}  // namespace mlmc_qdrift
