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

// Closed-form reference solutions for resonant pseudomode decay, its
// weak-coupling (Van Hove) and strong-coupling limits, the finite-temperature
// deformation generator, and the FMO dimer parameter estimates.
//
// Two-level reduced states use the basis {|0⟩, |1⟩}; three-level models use
// {|0⟩, |1⟩, |1̃⟩} (vacuum, system, pseudomode).

#include <span>
#include <utility>
#include <vector>

#include "openq/gksl.hpp"

namespace openq {

/// Resonant single pseudomode, interaction picture.
struct ResonanceParams {
  double g = 0.0;      ///< coupling
  double gamma = 0.0;  ///< pseudomode width

  /// Markovian decay rate γ₀ = 4g²/γ.
  double gamma0() const { return 4.0 * g * g / gamma; }
  /// Δ = ¼√(γ² - 16g²); imaginary in the oscillatory regime.
  Complex delta() const;
  bool oscillatory() const { return gamma * gamma - 16.0 * g * g < 0.0; }

  static ResonanceParams from_markov_rate(double g, double gamma0) {
    return {g, 4.0 * g * g / gamma0};
  }
};

/// (ψ₁, ψ̃₁) with ψ₁(0) = 1, ψ̃₁(0) = 0. Near Δ = 0 the analytic limit
/// (cosh → 1, sinh Δt/Δ → t) is used.
std::pair<Complex, Complex> resonance_amplitudes(const ResonanceParams& p, double t);

/// Initial reduced state ρ₁₁|1⟩⟨1| + (1-ρ₁₁)|0⟩⟨0| + ρ₁₀|1⟩⟨0| + h.c.
struct TwoLevelInit {
  double rho11 = 1.0;
  Complex rho10 = 0.0;

  /// Throws InvalidInput if the state is not a valid density matrix.
  void validate() const;
  Matrix matrix() const;
};

/// Reduced state of the resonant model in terms of g and γ₀.
Matrix resonance_rho_s(double g, double gamma0, const TwoLevelInit& init, double t);

/// ρ_M: exponential decay at γ₀, coherences at γ₀/2.
Matrix markov_limit_rho(double gamma0, const TwoLevelInit& init, double t);

/// cos²(gt)|1⟩⟨1| + sin²(gt)|0⟩⟨0|.
Matrix strong_coupling_limit_rho(double g, double t);

/// Parameters subject to weak-coupling scaling (t, g, γ₀) → (t/λ², λg, λ²γ₀).
struct VanHoveParams {
  double g = 0.0;
  double gamma0 = 0.0;
  double t = 0.0;
};

/// Throws InvalidInput for λ <= 0.
VanHoveParams van_hove_rescale(double lambda, const VanHoveParams& p);

/// Three-level model (4g²/γ₀) D_{1̃0} + g h_{11̃}.
LindbladModel resonance_gksl_model(double g, double gamma0);

struct FiniteTempParams {
  double g = 0.0;
  double gamma0 = 0.0;
  double n = 0.0;  ///< mean thermal occupation
};

/// γ₀n D_01 + 4g²/(γ₀(n+1)) D_{1̃0} + g h_{11̃} as a LindbladModel.
LindbladModel finite_temp_generator(const FiniteTempParams& p);

/// Thermal Markovian solution; stationary state diag((1+n)/(1+2n), n/(1+2n)).
Matrix finite_temp_markov_rho(double gamma0, double n, const TwoLevelInit& init, double t);

/// Propagates a three-level model from the reduced initial state (pseudomode
/// empty) and traces out the pseudomode. The untraced trajectory is stored
/// in `full_out` when given.
Trajectory reduced_three_level_trajectory(const LindbladModel& model, const TwoLevelInit& init,
                                          std::span<const double> times,
                                          Trajectory* full_out = nullptr);

/// One row of a limit experiment.
struct LimitRow {
  double lambda = 0.0;
  double sup_error = 0.0;  ///< sup over the grid of the max-entry difference
};

/// sup_t ‖ρ_S(t/λ², λg, λ²γ₀) - ρ_M(t)‖_max from the closed form, per λ.
std::vector<LimitRow> van_hove_sweep(double g, double gamma0, const TwoLevelInit& init,
                                     std::span<const double> lambdas, std::span<const double> times);

/// Same, using propagated and traced finite-temperature dynamics against the
/// thermal Markovian closed form. Propagated states are appended to `states`
/// when non-null.
std::vector<LimitRow> finite_temp_sweep(const FiniteTempParams& p, const TwoLevelInit& init,
                                        std::span<const double> lambdas,
                                        std::span<const double> times,
                                        std::vector<Matrix>* states = nullptr);

/// sup_t ‖ρ_S(t/λ, λg) - strong_coupling_limit_rho(g, t)‖_max at fixed γ, ρ₁₁ = 1.
std::vector<LimitRow> strong_coupling_sweep(double g, double gamma, std::span<const double> lambdas,
                                            std::span<const double> times);

/// Speed of light in cm/ps.
inline constexpr double kSpeedOfLightCmPerPs = 0.0299792458;

/// rate [1/ps] = c · value [1/cm]; no 2π factor.
double wavenumber_to_rate(double wavenumber);
double rate_to_wavenumber(double rate_per_ps);

struct FMOParams {
  double omega0 = 0.0;       ///< vibrational peak (cm⁻¹)
  double beta_inv = 0.0;     ///< temperature as energy (cm⁻¹)
  double huang_rhys = 0.0;   ///< S
  double gamma0_half = 0.0;  ///< Markovian coherence decay rate γ₀/2 (cm⁻¹)

  void validate() const;
};

struct FMOReport {
  double n = 0.0;            ///< thermal occupation of the peak
  double g = 0.0;            ///< √S ω₀ (cm⁻¹)
  double gamma0 = 0.0;       ///< cm⁻¹
  double gamma = 0.0;        ///< 4g²/γ₀ (cm⁻¹)
  double gamma_quarter = 0.0;
  double abs_delta = 0.0;    ///< ¼√|γ² - 16g²| (cm⁻¹)
  bool oscillatory = false;  ///< γ² < 16g²
  double coherence_lifetime_ps = 0.0;     ///< 4/γ
  double markov_lifetime_fs = 0.0;        ///< 1/(γ₀/2)
  double population_period_ps = 0.0;      ///< π/|Δ|, period of cos²(|Δ|t)
};

FMOReport fmo_derive(const FMOParams& p);

}  // namespace openq
