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

#include <Eigen/Dense>

#include "mlmc_qdrift/mlmc.hpp"

namespace mlmc_qdrift {

/// chi = [zeta e; psi_coarse] with e = psi_fine - psi_coarse and
/// squared_norm S = ||chi||^2 = 1 + ||zeta e||^2.
///
/// Only the two physical-dimension blocks are stored; the 2d-dimensional
/// vector is never formed outside the dense test helpers.
struct AugmentedState {
    StateVector error_block;   // zeta * e
    StateVector coarse_block;  // |psi^{(l-1)}_K>
    double zeta = 1.0;
    double squared_norm = 1.0;

    /// ||e|| (unscaled).
    double error_norm() const { return error_block.norm() / zeta; }
    /// Stacked [error_block; coarse_block] for dense checks.
    Eigen::VectorXcd to_eigen() const;
};

/// O^ = [[zeta^-2 O, zeta^-1 O], [zeta^-1 O, 0]] = M(zeta) (x) O.
struct BlockObservable {
    Observable base;
    double zeta;

    /// (zeta^-1 + zeta^-2) ||O||.
    double norm_bound() const;
    /// Exact ||M(zeta)|| ||O|| (largest |eigenvalue| of the 2x2 factor).
    double exact_norm() const;
    Eigen::MatrixXcd dense(std::size_t qubit_cap = kDefaultDenseQubitCap) const;
};

/// zeta_l = c / sqrt(tau_l).
double zeta(std::size_t level, const LevelHierarchy& hier, double c);

AugmentedState make_augmented(const CoupledPaths& paths, double zeta);

/// Propagates the index-sharing pair for `seq` and assembles chi with
/// zeta = zeta(level, hier, c).
AugmentedState evolve_augmented(const Hamiltonian& h, const LevelHierarchy& hier, std::size_t level,
                                const IndexSequence& seq, const StateVector& psi0, double c);

/// One block step W = [[U_f, zeta (U_f - U_c)], [0, U_c]] with
/// U_f = e^{-i tau H_b} e^{-i tau H_a}, U_c = e^{-2 i tau H_a}, H_x = sign_x P_x.
/// Dense 2d x 2d; the upper block acts on the scaled error component.
Eigen::MatrixXcd build_block_step(const PauliString& a, const PauliString& b, double tau, double zeta,
                                  double sign_a = 1.0, double sign_b = 1.0,
                                  std::size_t qubit_cap = kDefaultDenseQubitCap);

/// <chi|O^|chi> = zeta^-2 <zeta e|O|zeta e> + 2 zeta^-1 Re<zeta e|O|psi_c>,
/// which equals Y = <psi_f|O|psi_f> - <psi_c|O|psi_c>.
double block_expectation(const AugmentedState& chi, const Observable& obs);

struct ShotNoiseVariance {
    double variance = 0.0;       // max(raw, 0)
    double raw = 0.0;            // S <chi|O^2|chi> - Y^2
    double second_moment = 0.0;  // <chi|O^2|chi>
    double worst_case = 0.0;     // S^2 ||O^||^2
    bool clamped = false;        // raw was negative
};

/// Per-path conditional shot-noise variance for a Pauli observable, using
/// <chi|O^2|chi> = ||e||^2 + zeta^-2.
ShotNoiseVariance shot_noise_variance(const AugmentedState& chi, const Observable& obs);

/// Same quantity for a general Hermitian observable via dense <chi|O^2|chi>.
ShotNoiseVariance shot_noise_variance_dense(const AugmentedState& chi, const Eigen::MatrixXcd& observable);

struct NormDiagnostics {
    double squared_norm = 1.0;
    double norm_upper_bound = 1.0;  // 1 + c^2 C_e^2 tau
    bool norm_lower_ok = true;      // S >= 1
    bool norm_upper_ok = true;      // S <= 1 + c^2 C_e^2 tau
    double observable_norm = 0.0;
    double observable_norm_bound = 0.0;
    bool observable_bound_ok = true;
    double error_over_tau = 0.0;  // ||e|| / tau, the empirical C_e
};

/// Checks 1 <= S <= 1 + c^2 C_e^2 tau and ||O^|| <= (zeta^-1 + zeta^-2)||O||.
/// With dense_observable_norm the operator norm is taken from the dense
/// 2d x 2d matrix (small registers only), otherwise from the 2x2 factor.
NormDiagnostics check_norm_bounds(const AugmentedState& chi, const Observable& obs, double error_constant,
                                  double tau, double c, bool dense_observable_norm = false);

/// Hermitian / anti-Hermitian split of the second half-step block generator
///   G = -i tau [[H_b, zeta dH], [0, H_a]],  dH = H_b - H_a,
/// as G = -i Hc + Kc with
///   Hc = tau [|0><0| (x) H_b + |1><1| (x) H_a + (zeta/2) X (x) dH],
///   Kc = (tau zeta / 2) Y (x) dH.
struct BlockGenerators {
    double tau = 0.0;
    double zeta = 0.0;
    Eigen::MatrixXcd hermitian;
    Eigen::MatrixXcd antihermitian;
    Eigen::MatrixXcd raw;
    double hermitian_norm = 0.0;
    double antihermitian_norm = 0.0;  // = (tau zeta / 2) ||dH||
    double delta_norm = 0.0;          // ||dH|| <= 2
    double reconstruction_error = 0.0;  // max |(-i Hc + Kc) - G|
};

BlockGenerators block_generator_norms(const PauliString& a, const PauliString& b, double tau, double zeta,
                                      double sign_a = 1.0, double sign_b = 1.0,
                                      std::size_t qubit_cap = kDefaultDenseQubitCap);

/// Largest |eigenvalue| of a Hermitian matrix.
double hermitian_operator_norm(const Eigen::MatrixXcd& m);

}  // namespace mlmc_qdrift
