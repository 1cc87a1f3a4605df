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
#include <cstdint>
#include <span>
#include <vector>

#include "mlmc_qdrift/hamiltonian.hpp"
#include "mlmc_qdrift/parallel.hpp"
#include "mlmc_qdrift/rng.hpp"

namespace mlmc_qdrift {

/// Sampled term indices j_1..j_N driving one qDRIFT circuit.
struct IndexSequence {
    std::vector<std::uint32_t> indices;

    std::size_t size() const { return indices.size(); }
};

/// Evolution time t, gate count N and step tau = lambda t / N (lambda included).
struct QDriftConfig {
    double t = 0.0;
    std::size_t gate_count = 0;
    double tau = 0.0;

    static QDriftConfig make(const Hamiltonian& h, double t, std::size_t gate_count);
};

/// How one circuit sample is turned into a number.
///  - Expectation: the exact quadratic form <psi|O|psi> of the final state.
///  - SingleShot: one projective measurement outcome in {-1, +1}.
enum class Measurement { Expectation, SingleShot };

IndexSequence sample_sequence(RngEngine& rng, const Hamiltonian& h, std::size_t gate_count);
IndexSequence sample_sequence(const RngStream& stream, const Hamiltonian& h, std::size_t gate_count);

/// Applies exp(-i sign(h_j) tau P_j) for each index in order.
void run_trajectory_inplace(const Hamiltonian& h, std::span<const std::uint32_t> indices, double tau,
                            std::span<Complex> amps);
StateVector run_trajectory(const Hamiltonian& h, const IndexSequence& seq, double tau, const StateVector& psi0);

/// One step of the averaged qDRIFT channel,
///   rho -> sum_j p_j exp(-i s_j tau P_j) rho exp(+i s_j tau P_j),
/// evaluated with the closed-form Pauli conjugation in O(M d^2). Phase tables
/// are built once per (H, tau) so iterated application stays cheap.
class AveragedChannel {
  public:
    AveragedChannel(const Hamiltonian& h, double tau);

    void apply(const DensityMatrix& in, DensityMatrix& out, Execution exec = Execution::Parallel) const;
    DensityMatrix apply(const DensityMatrix& in, Execution exec = Execution::Parallel) const;

    std::size_t num_qubits() const { return num_qubits_; }

  private:
    struct Term {
        std::uint64_t flip;
        Complex commutator_weight;  // -i p_j sin cos
        double sandwich_weight;     // p_j sin^2
        std::vector<Complex> phases;
    };
    void apply_row(const DensityMatrix& in, DensityMatrix& out, std::uint64_t row) const;

    std::size_t num_qubits_;
    double identity_weight_;  // cos^2
    std::vector<Term> terms_;
};

DensityMatrix averaged_channel_step(const Hamiltonian& h, double tau, const DensityMatrix& rho,
                                    Execution exec = Execution::Parallel);

/// E^N[rho0] with tau = lambda t / N.
DensityMatrix iterate_channel(const Hamiltonian& h, double t, std::size_t gate_count, const DensityMatrix& rho0,
                              Execution exec = Execution::Parallel);

/// Tr(Pi_+ E^N[rho0]) with Pi_+ = (I + O) / 2.
double channel_probability(const Hamiltonian& h, const Observable& obs, const DensityMatrix& rho0,
                           std::size_t gate_count, double t, Execution exec = Execution::Parallel);

/// Diamond-norm bias bound 2 lambda^2 t^2 / N.
double bias_bound(double lambda, double t, std::size_t gate_count);

/// Standard qDRIFT cost at target RMSE eps with bias constant B (|bias| <= B/N)
/// and single-sample variance sigma2. Counts are held as doubles because the
/// totals overflow 64-bit integers for small eps.
struct StandardCost {
    double gate_count;  // ceil(sqrt(2) B / eps)
    double samples;     // ceil(2 sigma2 / eps^2)
    double total_gates;
};
StandardCost std_cost(double eps, double bias_constant, double sigma2);

/// One standard qDRIFT sample from the given stream.
double qdrift_sample(const Hamiltonian& h, const Observable& obs, const StateVector& psi0, std::size_t gate_count,
                     double tau, const RngStream& stream, Measurement measurement);

struct QDriftRun {
    QDriftConfig config;
    SampleSummary summary;
    std::uint64_t total_gates;
};

/// Mean of n independent qDRIFT samples; sample i uses stream rng.derive(i).
QDriftRun run_qdrift(const Hamiltonian& h, const Observable& obs, const StateVector& psi0, double t,
                     std::size_t gate_count, std::size_t n_samples, const RngStream& rng, Measurement measurement,
                     Execution exec = Execution::Parallel);

}  // namespace mlmc_qdrift
