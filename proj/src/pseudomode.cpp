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

#include "openq/pseudomode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "openq/kernels.hpp"

namespace openq {

void PseudomodeParams::validate() const {
  if (terms.empty()) throw InvalidInput("pseudomode parameters need at least one term");
  if (!std::isfinite(omega1)) throw InvalidInput("pseudomode: omega1 must be finite");
  for (const PseudomodeTerm& t : terms) {
    if (!(t.gamma > 0.0) || !std::isfinite(t.gamma)) {
      throw InvalidInput("pseudomode: gamma must be > 0");
    }
    if (!std::isfinite(t.omega) || !std::isfinite(t.g.real()) || !std::isfinite(t.g.imag())) {
      throw InvalidInput("pseudomode: non-finite term");
    }
  }
}

bool PseudomodeParams::all_real_couplings() const {
  return std::all_of(terms.begin(), terms.end(),
                     [](const PseudomodeTerm& t) { return t.g.imag() == 0.0; });
}

Complex memory_kernel(const PseudomodeParams& p, double t) {
  if (t < 0.0) throw InvalidInput("memory_kernel: t must be >= 0");
  Complex sum = 0.0;
  for (const PseudomodeTerm& term : p.terms) {
    sum += term.g * term.g * std::exp(-Complex(0.5 * term.gamma, term.omega) * t);
  }
  return sum;
}

double spectral_density(const PseudomodeParams& p, double omega) {
  if (!p.all_real_couplings()) {
    throw InvalidInput("spectral_density: undefined for complex couplings");
  }
  double j = 0.0;
  for (const PseudomodeTerm& term : p.terms) {
    const double half = 0.5 * term.gamma;
    const double d = omega - term.omega;
    const double g = term.g.real();
    j += term.gamma * g * g / (half * half + d * d);
  }
  return j;
}

EffectiveHamiltonian build_pseudomode_heff(const PseudomodeParams& p, const Tolerances& tol) {
  p.validate();
  const auto n = static_cast<Eigen::Index>(p.terms.size());
  Matrix h = Matrix::Zero(n + 1, n + 1);
  h(0, 0) = p.omega1;
  for (Eigen::Index l = 1; l <= n; ++l) {
    const PseudomodeTerm& t = p.terms[static_cast<std::size_t>(l - 1)];
    h(l, l) = Complex(t.omega, -0.5 * t.gamma);
    h(l, 0) = t.g;
    h(0, l) = t.g;
  }
  EffectiveHamiltonian heff(std::move(h));
  decompose_heff(heff, tol);
  return heff;
}

AmplitudeSeries pseudomode_amplitude(const PseudomodeParams& p, Complex psi1_0,
                                     std::span<const double> times) {
  const EffectiveHamiltonian heff = build_pseudomode_heff(p);
  Vector psi0 = Vector::Zero(heff.dim());
  psi0(0) = psi1_0;
  const std::vector<Vector> states = evolve_psi(heff, psi0, times);
  AmplitudeSeries out;
  out.times.assign(times.begin(), times.end());
  for (const Vector& v : states) out.values.push_back(v(0));
  return out;
}

AmplitudeSeries solve_volterra(const PseudomodeParams& p, const VolterraGrid& grid, Complex psi1_0) {
  p.validate();
  if (!(grid.h > 0.0) || grid.steps < 1) throw InvalidInput("solve_volterra: need h > 0, steps >= 1");
  const std::size_t n = grid.steps;
  const double h = grid.h;

  // Kernel stored reversed so the history sum is a contiguous dot product:
  // G((m - j)h) = rev[n - m + j].
  std::vector<Complex> rev(n + 1);
  for (std::size_t i = 0; i <= n; ++i) rev[n - i] = memory_kernel(p, h * static_cast<double>(i));
  const Complex g0 = rev[n];

  std::vector<Complex> psi(n + 1);
  psi[0] = psi1_0;
  const Complex drift(0.0, -p.omega1);
  Complex f_prev = drift * psi1_0;  // memory term vanishes at t = 0
  const Complex implicit = 1.0 - 0.5 * h * (drift - 0.5 * h * g0);

  for (std::size_t m = 1; m <= n; ++m) {
    // Known part of the memory integral at t_m, excluding the ψ_m endpoint.
    Complex known = 0.5 * rev[n - m] * psi[0];
    if (m > 1) {
      known += kernels::dot({rev.data() + (n - m + 1), m - 1}, {psi.data() + 1, m - 1});
    }
    known *= h;
    psi[m] = (psi[m - 1] + 0.5 * h * (f_prev - known)) / implicit;
    f_prev = drift * psi[m] - known - 0.5 * h * g0 * psi[m];
  }

  AmplitudeSeries out;
  out.times.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out.times[i] = h * static_cast<double>(i);
  out.values = std::move(psi);
  return out;
}

AmplitudeSeries solve_volterra(const PseudomodeParams& p, std::span<const double> times,
                               Complex psi1_0) {
  if (times.size() < 2 || times[0] != 0.0) {
    throw InvalidInput("solve_volterra: grid must start at 0 with at least 2 points");
  }
  const double h = times[1] - times[0];
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - h) > 1e-9 * h) {
      throw InvalidInput("solve_volterra: non-uniform grid");
    }
  }
  AmplitudeSeries out = solve_volterra(p, VolterraGrid{h, times.size() - 1}, psi1_0);
  out.times.assign(times.begin(), times.end());
  return out;
}

namespace {

// Values of a fine solution at every `stride`-th step.
std::vector<Complex> sample(const AmplitudeSeries& s, std::size_t stride) {
  std::vector<Complex> out;
  for (std::size_t i = 0; i < s.values.size(); i += stride) out.push_back(s.values[i]);
  return out;
}

}  // namespace

RichardsonResult solve_volterra_converged(const PseudomodeParams& p, double t_max, Complex psi1_0,
                                          double target, std::size_t coarse_points, double h0,
                                          int max_halvings) {
  if (coarse_points < 2 || !(t_max > 0.0)) throw InvalidInput("solve_volterra_converged: bad grid");
  const std::size_t intervals = coarse_points - 1;
  const double coarse_h = t_max / static_cast<double>(intervals);
  std::size_t sub = 1;
  if (h0 > 0.0) sub = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(coarse_h / h0)));

  auto run = [&](std::size_t s) {
    return sample(solve_volterra(p, VolterraGrid{coarse_h / static_cast<double>(s), intervals * s},
                                 psi1_0),
                  s);
  };

  std::vector<Complex> a = run(sub);
  std::vector<Complex> b = run(2 * sub);
  double e_ab = kernels::max_abs_diff(a, b);
  RichardsonResult res;
  for (int k = 0;; ++k) {
    std::vector<Complex> c = run(4 * sub);
    const double e_bc = kernels::max_abs_diff(b, c);
    res.observed_order = (e_bc > 0.0 && e_ab > 0.0) ? std::log2(e_ab / e_bc) : 2.0;
    res.error_estimate = e_bc / 3.0;
    res.h = coarse_h / static_cast<double>(4 * sub);
    if (res.error_estimate <= target || k + 1 >= max_halvings) {
      res.series.values = std::move(c);
      break;
    }
    sub *= 2;
    a = std::move(b);
    b = std::move(c);
    e_ab = e_bc;
  }
  res.series.times = uniform_grid(t_max, coarse_points);
  return res;
}

DiscretizedBath discretize_bath(const PseudomodeParams& p, std::size_t n_modes, double k_half_width) {
  p.validate();
  if (n_modes < 2) throw InvalidInput("discretize_bath: need at least 2 modes");
  if (!(k_half_width >= 1.0)) throw InvalidInput("discretize_bath: window half-width K must be >= 1");

  std::vector<std::pair<double, double>> windows;
  for (const PseudomodeTerm& t : p.terms) {
    windows.emplace_back(t.omega - k_half_width * t.gamma, t.omega + k_half_width * t.gamma);
  }
  std::sort(windows.begin(), windows.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& w : windows) {
    if (!merged.empty() && w.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, w.second);
    } else {
      merged.push_back(w);
    }
  }
  if (merged.size() > n_modes) {
    throw InvalidInput("discretize_bath: fewer modes than frequency windows");
  }
  double total = 0.0;
  for (const auto& w : merged) total += w.second - w.first;
  if (!(total > 0.0)) throw InvalidInput("discretize_bath: degenerate frequency window");

  // Mode counts proportional to window length; the last window takes the remainder.
  std::vector<std::size_t> counts;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    std::size_t c;
    if (i + 1 == merged.size()) {
      c = n_modes - assigned;
    } else {
      const double share = (merged[i].second - merged[i].first) / total;
      c = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(share * static_cast<double>(n_modes))));
      c = std::min(c, n_modes - assigned - (merged.size() - 1 - i));
    }
    counts.push_back(c);
    assigned += c;
  }

  DiscretizedBath bath;
  bath.window_half_width = k_half_width;
  bath.requested_modes = n_modes;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    const double width = (merged[i].second - merged[i].first) / static_cast<double>(counts[i]);
    for (std::size_t j = 0; j < counts[i]; ++j) {
      const double w = merged[i].first + (static_cast<double>(j) + 0.5) * width;
      bath.modes.push_back({w, std::sqrt(spectral_density(p, w) * width / (2.0 * std::numbers::pi))});
    }
  }
  return bath;
}

FriedrichsResult evolve_friedrichs(const DiscretizedBath& bath, double omega1, Complex psi1_0,
                                   std::span<const double> times) {
  check_time_grid(times);
  const auto n = static_cast<Eigen::Index>(bath.modes.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
  h(0, 0) = omega1;
  for (Eigen::Index k = 0; k < n; ++k) {
    const BathMode& m = bath.modes[static_cast<std::size_t>(k)];
    h(k + 1, k + 1) = m.omega;
    h(0, k + 1) = m.g;
    h(k + 1, 0) = m.g;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXd& v = es.eigenvectors();
  const RealVector& lambda = es.eigenvalues();

  // ψ(t) = V e^{-iΛt} Vᵀ ψ(0), ψ(0) = ψ₁(0) e₀ so Vᵀψ(0) = ψ₁(0) V(0, :).
  const auto dim = static_cast<std::size_t>(n + 1);
  std::vector<Complex> coeff(dim), phased(dim), psi(dim);
  using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMatrix vc = v.cast<Complex>();
  for (std::size_t k = 0; k < dim; ++k) coeff[k] = psi1_0 * v(0, static_cast<Eigen::Index>(k));

  FriedrichsResult out;
  out.psi1.times.assign(times.begin(), times.end());
  for (double t : times) {
    for (std::size_t k = 0; k < dim; ++k) {
      phased[k] = coeff[k] * std::exp(Complex(0.0, -lambda(static_cast<Eigen::Index>(k)) * t));
    }
    kernels::gemv({vc.data(), dim * dim}, dim, dim, phased, psi);
    double norm = 0.0;
    for (const Complex& c : psi) norm += std::norm(c);
    out.psi1.values.push_back(psi[0]);
    out.norm.push_back(norm);
  }
  return out;
}

DensityMatrix reduced_density_matrix(Complex psi0_vacuum, Complex psi1_initial, Complex psi1_t,
                                     const Tolerances& tol) {
  const double total = std::norm(psi0_vacuum) + std::norm(psi1_initial);
  if (std::abs(total - 1.0) > tol.tr) {
    throw InvalidInput("reduced_density_matrix: |ψ₀|² + |ψ₁(0)|² = " + std::to_string(total));
  }
  Matrix rho(2, 2);
  const double pop = std::norm(psi1_t);
  rho(1, 1) = pop;
  rho(1, 0) = psi1_t * std::conj(psi0_vacuum);
  rho(0, 1) = std::conj(rho(1, 0));
  rho(0, 0) = 1.0 - pop;
  return DensityMatrix::unchecked(std::move(rho));
}

}  // namespace openq
