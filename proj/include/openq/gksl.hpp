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

// GKSL (Lindblad) models, the non-Hermitian → GKSL construction and a dense
// propagator.

#include <span>
#include <vector>

#include "openq/nonhermitian.hpp"
#include "openq/trajectory.hpp"

namespace openq {

/// dρ/dt = -i[H, ρ] + Σ_l (L_l ρ L_l† - ½{L_l†L_l, ρ}). Immutable once built.
class LindbladModel {
 public:
  /// Throws InvalidInput if H is not Hermitian within tol.herm or a jump has
  /// the wrong shape.
  LindbladModel(Matrix hamiltonian, std::vector<Matrix> jumps, const Tolerances& tol = {});

  Eigen::Index dim() const { return hamiltonian_.rows(); }
  const Matrix& hamiltonian() const { return hamiltonian_; }
  const std::vector<Matrix>& jumps() const { return jumps_; }

  /// dρ/dt evaluated with dense matrix products (no superoperator storage).
  Matrix apply(const Matrix& rho) const;

 private:
  Matrix hamiltonian_;
  std::vector<Matrix> jumps_;
  Matrix nonhermitian_;  // H - (i/2) Σ L†L
};

/// Rates below this are treated as absent channels.
inline constexpr double kMinJumpRate = 1e-14;

/// Model on n+1 levels (vacuum at 0): Hamiltonian H ⊕ 0 and jumps
/// √γ_l |0⟩⟨l| for every γ_l above kMinJumpRate. Throws NotDissipative.
LindbladModel build_gksl_from_heff(const EffectiveHamiltonian& heff, const Tolerances& tol = {});
LindbladModel build_gksl_from_decomposition(const HeffDecomposition& dec);

/// ℒ with vec(dρ/dt) = ℒ vec(ρ), row-major vectorization.
Superoperator liouvillian_matrix(const LindbladModel& model);

struct PropagateOptions {
  /// Largest dimension propagated with a dense exponential of ℒ; larger
  /// models use the Taylor exponential action in operator form.
  Eigen::Index dense_dim_limit = 16;
  Tolerances tol{};
};

/// ρ(t) = exp(ℒt) ρ₀ on the grid. Times must be non-decreasing and >= 0.
Trajectory propagate(const LindbladModel& model, const DensityMatrix& rho0,
                     std::span<const double> times, const PropagateOptions& opts = {});

}  // namespace openq
