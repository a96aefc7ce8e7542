// Copyright 2026 The openq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Von Neumann and Schrödinger evolution with a non-Hermitian Hamiltonian
// whose anti-Hermitian part only removes norm.

#include <span>
#include <variant>
#include <vector>

#include "openq/quantum_core.hpp"

namespace openq {

/// Complex square generator matrix (angular frequency units).
class EffectiveHamiltonian {
 public:
  explicit EffectiveHamiltonian(Matrix m);

  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
};

/// H_eff = H - (i/2) Σ_l γ_l |l⟩⟨l| with H Hermitian and orthonormal |l⟩.
struct HeffDecomposition {
  Matrix hermitian;
  std::vector<double> gammas;
  /// Column l is |l⟩.
  Matrix basis;

  Matrix reconstruct() const;
  Eigen::Index dim() const { return hermitian.rows(); }
};

/// Splits H_eff into Hermitian part and decay channels. Eigenvalues of
/// -(H_eff - H_eff†)/i in [-tol.psd, 0) are clamped to zero.
/// Throws NotDissipative when (H_eff - H_eff†)/i has an eigenvalue above tol.psd.
HeffDecomposition decompose_heff(const EffectiveHamiltonian& heff, const Tolerances& tol = {});

/// -Σ_l γ_l ⟨l|R|l⟩ = d/dt Tr R(t) at the current state; never positive.
double trace_decay_rate(const NonNormalizedDensityMatrix& r, const HeffDecomposition& dec);

/// exp(-i H_eff t) for arbitrary t. Uses the eigendecomposition of H_eff when
/// its eigenvector matrix has condition number below 1e4, and Padé
/// scaling-and-squaring otherwise (defective or nearly defective H_eff).
class NonHermitianPropagator {
 public:
  explicit NonHermitianPropagator(const EffectiveHamiltonian& heff);

  Matrix at(double t) const;
  bool uses_eigendecomposition() const { return diagonal_; }

 private:
  Matrix generator_;  // -i H_eff
  bool diagonal_ = false;
  Matrix vecs_;
  Matrix vecs_inv_;
  Vector eigs_;  // eigenvalues of -i H_eff
};

/// R(t) = e^{-iH_eff t} R₀ e^{iH_eff† t} for each t. Throws NotDissipative.
std::vector<NonNormalizedDensityMatrix> evolve_R(const EffectiveHamiltonian& heff,
                                                 const NonNormalizedDensityMatrix& r0,
                                                 std::span<const double> times,
                                                 const Tolerances& tol = {});

/// ψ(t) = e^{-iH_eff t} ψ₀ for each t. Throws NotDissipative.
std::vector<Vector> evolve_psi(const EffectiveHamiltonian& heff, const Vector& psi0,
                               std::span<const double> times, const Tolerances& tol = {});

}  // namespace openq
