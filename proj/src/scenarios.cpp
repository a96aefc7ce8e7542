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

#include "openq/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "openq/kernels.hpp"

namespace openq {

Complex ResonanceParams::delta() const {
  return 0.25 * std::sqrt(Complex(gamma * gamma - 16.0 * g * g, 0.0));
}

namespace {

// e^{-at}·cosh(Δt) and e^{-at}·sinh(Δt)/Δ for the resonance solution,
// written to stay finite for large t and smooth through Δ = 0.
struct DampedHyperbolic {
  double c;
  double s;
};

DampedHyperbolic damped_hyperbolic(const ResonanceParams& p, double t) {
  const double a = 0.25 * p.gamma;
  const double disc = p.gamma * p.gamma - 16.0 * p.g * p.g;
  const double scale = std::max(p.gamma * p.gamma, 16.0 * p.g * p.g);
  if (std::abs(disc) < 1e-12 * scale || disc == 0.0) {
    const double e = std::exp(-a * t);
    return {e, t * e};
  }
  if (disc > 0.0) {
    const double delta = 0.25 * std::sqrt(disc);
    const double e = std::exp((delta - a) * t);
    const double x = 2.0 * delta * t;
    const double tail = std::exp(-x);
    const double shc = x > 0.0 ? -std::expm1(-x) / x : 1.0;  // (1 - e^{-x}) / x
    return {0.5 * e * (1.0 + tail), e * t * shc};
  }
  const double omega = 0.25 * std::sqrt(-disc);
  const double e = std::exp(-a * t);
  const double x = omega * t;
  const double sinc = std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
  return {e * std::cos(x), e * t * sinc};
}

Matrix two_level(double p11, Complex c10) {
  Matrix m(2, 2);
  m(0, 0) = 1.0 - p11;
  m(1, 1) = p11;
  m(1, 0) = c10;
  m(0, 1) = std::conj(c10);
  return m;
}

double max_entry_diff(const Matrix& a, const Matrix& b) {
  const auto n = static_cast<std::size_t>(a.size());
  return kernels::max_abs_diff({a.data(), n}, {b.data(), n});
}

}  // namespace

std::pair<Complex, Complex> resonance_amplitudes(const ResonanceParams& p, double t) {
  const DampedHyperbolic dh = damped_hyperbolic(p, t);
  const Complex psi1 = dh.c + 0.25 * p.gamma * dh.s;
  const Complex psi_mode = Complex(0.0, -p.g) * dh.s;
  return {psi1, psi_mode};
}

void TwoLevelInit::validate() const {
  const DensityReport rep = validate_density_matrix(matrix());
  if (!rep.ok()) throw InvalidInput("two-level initial state is not a density matrix");
}

Matrix TwoLevelInit::matrix() const { return two_level(rho11, rho10); }

Matrix resonance_rho_s(double g, double gamma0, const TwoLevelInit& init, double t) {
  if (!(gamma0 > 0.0)) throw InvalidInput("resonance_rho_s: gamma0 must be > 0");
  init.validate();
  const ResonanceParams p = ResonanceParams::from_markov_rate(g, gamma0);
  const double psi1 = resonance_amplitudes(p, t).first.real();
  return two_level(init.rho11 * psi1 * psi1, init.rho10 * psi1);
}

Matrix markov_limit_rho(double gamma0, const TwoLevelInit& init, double t) {
  return two_level(init.rho11 * std::exp(-gamma0 * t), init.rho10 * std::exp(-0.5 * gamma0 * t));
}

Matrix strong_coupling_limit_rho(double g, double t) {
  const double c = std::cos(g * t);
  return two_level(c * c, 0.0);
}

VanHoveParams van_hove_rescale(double lambda, const VanHoveParams& p) {
  if (!(lambda > 0.0)) throw InvalidInput("van_hove_rescale: lambda must be > 0");
  return {lambda * p.g, lambda * lambda * p.gamma0, p.t / (lambda * lambda)};
}

LindbladModel finite_temp_generator(const FiniteTempParams& p) {
  if (!(p.gamma0 > 0.0) || !(p.n >= 0.0) || !std::isfinite(p.g)) {
    throw InvalidInput("finite_temp_generator: need gamma0 > 0, n >= 0");
  }
  Matrix h = Matrix::Zero(3, 3);
  h(1, 2) = p.g;
  h(2, 1) = p.g;
  std::vector<Matrix> jumps;
  const double pump = p.gamma0 * p.n;
  if (pump >= kMinJumpRate) jumps.push_back(std::sqrt(pump) * ket_bra(1, 0, 3));
  const double decay = 4.0 * p.g * p.g / (p.gamma0 * (p.n + 1.0));
  if (decay >= kMinJumpRate) jumps.push_back(std::sqrt(decay) * ket_bra(0, 2, 3));
  return LindbladModel(std::move(h), std::move(jumps));
}

LindbladModel resonance_gksl_model(double g, double gamma0) {
  return finite_temp_generator({g, gamma0, 0.0});
}

Matrix finite_temp_markov_rho(double gamma0, double n, const TwoLevelInit& init, double t) {
  if (!(n >= 0.0)) throw InvalidInput("finite_temp_markov_rho: n must be >= 0");
  const double stationary = n / (1.0 + 2.0 * n);
  const double rate = gamma0 * (2.0 * n + 1.0);
  return two_level(stationary + (init.rho11 - stationary) * std::exp(-rate * t),
                   init.rho10 * std::exp(-0.5 * rate * t));
}

Trajectory reduced_three_level_trajectory(const LindbladModel& model, const TwoLevelInit& init,
                                          std::span<const double> times, Trajectory* full_out) {
  if (model.dim() != 3) throw DimensionMismatch("reduced_three_level_trajectory: model must be 3-level");
  init.validate();
  Matrix rho0 = Matrix::Zero(3, 3);
  rho0.topLeftCorner(2, 2) = init.matrix();
  Trajectory full = propagate(model, DensityMatrix::unchecked(std::move(rho0)), times);
  Trajectory out;
  out.times = full.times;
  out.metadata = full.metadata;
  out.metadata["reduced"] = "pseudomode traced out";
  const IndexSet mode{2};
  for (const Matrix& m : full.states) {
    out.states.push_back(partial_trace_over_indices(DensityMatrix::unchecked(m), mode).rho.matrix());
  }
  if (full_out != nullptr) *full_out = std::move(full);
  return out;
}

std::vector<LimitRow> van_hove_sweep(double g, double gamma0, const TwoLevelInit& init,
                                     std::span<const double> lambdas, std::span<const double> times) {
  std::vector<LimitRow> rows;
  for (double lambda : lambdas) {
    LimitRow row{lambda, 0.0};
    for (double t : times) {
      const VanHoveParams sc = van_hove_rescale(lambda, {g, gamma0, t});
      row.sup_error = std::max(row.sup_error, max_entry_diff(resonance_rho_s(sc.g, sc.gamma0, init, sc.t),
                                                             markov_limit_rho(gamma0, init, t)));
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<LimitRow> finite_temp_sweep(const FiniteTempParams& p, const TwoLevelInit& init,
                                        std::span<const double> lambdas,
                                        std::span<const double> times,
                                        std::vector<Matrix>* states) {
  std::vector<LimitRow> rows;
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw InvalidInput("finite_temp_sweep: lambda must be > 0");
    const FiniteTempParams scaled{lambda * p.g, lambda * lambda * p.gamma0, p.n};
    std::vector<double> scaled_times;
    for (double t : times) scaled_times.push_back(t / (lambda * lambda));
    Trajectory full;
    const Trajectory reduced = reduced_three_level_trajectory(finite_temp_generator(scaled), init,
                                                              scaled_times, states ? &full : nullptr);
    LimitRow row{lambda, 0.0};
    for (std::size_t i = 0; i < times.size(); ++i) {
      row.sup_error = std::max(row.sup_error, max_entry_diff(reduced.states[i],
                                                             finite_temp_markov_rho(p.gamma0, p.n, init, times[i])));
    }
    if (states) states->insert(states->end(), full.states.begin(), full.states.end());
    rows.push_back(row);
  }
  return rows;
}

std::vector<LimitRow> strong_coupling_sweep(double g, double gamma, std::span<const double> lambdas,
                                            std::span<const double> times) {
  std::vector<LimitRow> rows;
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw InvalidInput("strong_coupling_sweep: lambda must be > 0");
    const ResonanceParams p{lambda * g, gamma};
    LimitRow row{lambda, 0.0};
    for (double t : times) {
      const double psi1 = resonance_amplitudes(p, t / lambda).first.real();
      row.sup_error = std::max(row.sup_error, max_entry_diff(two_level(psi1 * psi1, 0.0),
                                                             strong_coupling_limit_rho(g, t)));
    }
    rows.push_back(row);
  }
  return rows;
}

double wavenumber_to_rate(double wavenumber) {
  if (!(wavenumber >= 0.0)) throw InvalidInput("wavenumber_to_rate: value must be >= 0");
  return kSpeedOfLightCmPerPs * wavenumber;
}

double rate_to_wavenumber(double rate_per_ps) {
  if (!(rate_per_ps >= 0.0)) throw InvalidInput("rate_to_wavenumber: value must be >= 0");
  return rate_per_ps / kSpeedOfLightCmPerPs;
}

void FMOParams::validate() const {
  for (double v : {omega0, beta_inv, huang_rhys, gamma0_half}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("FMO parameters must be positive and finite");
  }
}

FMOReport fmo_derive(const FMOParams& p) {
  p.validate();
  FMOReport r;
  r.n = 1.0 / std::expm1(p.omega0 / p.beta_inv);
  r.g = std::sqrt(p.huang_rhys) * p.omega0;
  r.gamma0 = 2.0 * p.gamma0_half;
  r.gamma = 4.0 * r.g * r.g / r.gamma0;
  r.gamma_quarter = 0.25 * r.gamma;
  const double disc = r.gamma * r.gamma - 16.0 * r.g * r.g;
  r.oscillatory = disc < 0.0;
  r.abs_delta = 0.25 * std::sqrt(std::abs(disc));
  r.coherence_lifetime_ps = 1.0 / wavenumber_to_rate(r.gamma_quarter);
  r.markov_lifetime_fs = 1000.0 / wavenumber_to_rate(p.gamma0_half);
  r.population_period_ps = r.abs_delta > 0.0 ? std::numbers::pi / wavenumber_to_rate(r.abs_delta) : 0.0;
  return r;
}

}  // namespace openq
