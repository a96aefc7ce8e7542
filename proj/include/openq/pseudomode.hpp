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

// Pseudomode reduction of a two-level system coupled to a Lorentzian
// reservoir at zero temperature, with two independent references: the
// integro-differential equation for ψ₁ solved directly, and the Friedrichs
// Hamiltonian with a discretized continuum.

#include <span>
#include <vector>

#include "openq/nonhermitian.hpp"
#include "openq/trajectory.hpp"

namespace openq {

/// One Lorentzian peak: kernel term g² e^{-(γ/2 + iω)t}.
struct PseudomodeTerm {
  Complex g;      ///< coupling amplitude (rad/time)
  double gamma;   ///< width, > 0
  double omega;   ///< center frequency (rad/time)
};

struct PseudomodeParams {
  double omega1 = 0.0;  ///< system frequency
  std::vector<PseudomodeTerm> terms;

  /// Throws InvalidInput on empty term list, γ <= 0 or non-finite values.
  void validate() const;
  bool all_real_couplings() const;
};

/// G(t) = Σ g_l² e^{-(γ_l/2 + iω_l)t}, t >= 0.
Complex memory_kernel(const PseudomodeParams& p, double t);

/// J(ω) = Σ γ_l g_l² / ((γ_l/2)² + (ω - ω_l)²). Throws InvalidInput for complex g_l.
double spectral_density(const PseudomodeParams& p, double omega);

/// H_eff on {|1⟩, |1̃⟩, …, |ñ⟩} (index 0 is the system level).
/// Throws NotDissipative when the couplings break admissibility.
EffectiveHamiltonian build_pseudomode_heff(const PseudomodeParams& p, const Tolerances& tol = {});

/// ψ₁(t) from the pseudomode H_eff started in ψ₁(0)|1⟩.
AmplitudeSeries pseudomode_amplitude(const PseudomodeParams& p, Complex psi1_0,
                                     std::span<const double> times);

/// Uniform grid t_i = i·h, i = 0..steps.
struct VolterraGrid {
  double h = 0.0;
  std::size_t steps = 0;
};

/// dψ₁/dt = -iω₁ψ₁ - ∫₀ᵗ G(t-s) ψ₁(s) ds with trapezoidal memory sum and an
/// implicit trapezoidal step (second order).
AmplitudeSeries solve_volterra(const PseudomodeParams& p, const VolterraGrid& grid, Complex psi1_0);

/// Same solver on an explicit time list; throws InvalidInput if it is not a
/// uniform grid starting at 0.
AmplitudeSeries solve_volterra(const PseudomodeParams& p, std::span<const double> times,
                               Complex psi1_0);

/// Step refinement until the estimated error (Richardson, order 2) on
/// [0, t_max] falls below `target`.
struct RichardsonResult {
  AmplitudeSeries series;  ///< finest-grid solution, sampled every `stride` fine steps
  double h = 0.0;          ///< finest step
  double observed_order = 0.0;
  double error_estimate = 0.0;  ///< sup |ψ_h - ψ_{h/2}| / 3
};

/// Halves the step from `h0` until error_estimate <= target or `max_halvings`
/// is exhausted. Coarse grid has `coarse_points` samples.
RichardsonResult solve_volterra_converged(const PseudomodeParams& p, double t_max, Complex psi1_0,
                                          double target, std::size_t coarse_points = 401,
                                          double h0 = 0.0, int max_halvings = 8);

struct BathMode {
  double omega;
  double g;
};

struct DiscretizedBath {
  std::vector<BathMode> modes;
  double window_half_width = 0.0;  ///< K (in units of each γ_l)
  std::size_t requested_modes = 0;
};

/// Midpoint samples on ∪_l [ω_l - Kγ_l, ω_l + Kγ_l] with g_k = √(J(ω_k)Δω/2π).
/// Throws InvalidInput for N < 2, K < 1, or fewer modes than merged windows.
DiscretizedBath discretize_bath(const PseudomodeParams& p, std::size_t n_modes, double k_half_width);

/// ψ₁(t) under the (N+1)-level Friedrichs Hamiltonian, ψ(0) = ψ₁(0)|1⟩.
struct FriedrichsResult {
  AmplitudeSeries psi1;
  std::vector<double> norm;  ///< |ψ(t)|² over system + bath
};

FriedrichsResult evolve_friedrichs(const DiscretizedBath& bath, double omega1, Complex psi1_0,
                                   std::span<const double> times);

/// ρ_S = |ψ₁|²|1⟩⟨1| + ψ₁ψ₀*|1⟩⟨0| + h.c. + (1 - |ψ₁|²)|0⟩⟨0| in basis {|0⟩, |1⟩}.
/// Throws InvalidInput unless |ψ₀|² + |ψ₁(0)|² = 1 within tol.tr.
DensityMatrix reduced_density_matrix(Complex psi0_vacuum, Complex psi1_initial, Complex psi1_t,
                                     const Tolerances& tol = {});

}  // namespace openq
