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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "openq/gksl.hpp"
#include "openq/pseudomode.hpp"
#include "support/random.hpp"

using namespace openq;
using openq::testing::max_abs;
using openq::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

PseudomodeParams single(double g, double gamma, double omega = 0.0, double omega1 = 0.0) {
  PseudomodeParams p;
  p.omega1 = omega1;
  p.terms.push_back({Complex(g, 0.0), gamma, omega});
  return p;
}

// (1/2π)∫ e^{-iωt} J(ω) dω over the whole line: adaptive Gauss-Kronrod on
// the peak windows, Ooura's double-exponential Fourier rule on the two tails.
Complex fourier_of_density(const PseudomodeParams& p, double t) {
  double lo = 1e300, hi = -1e300;
  for (const auto& term : p.terms) {
    lo = std::min(lo, term.omega - 40.0 * term.gamma);
    hi = std::max(hi, term.omega + 40.0 * term.gamma);
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto j = [&](double w) { return spectral_density(p, w); };

  constexpr int kPieces = 200;
  double re = 0.0, im = 0.0;
  for (int k = 0; k < kPieces; ++k) {
    const double a = lo + (hi - lo) * k / kPieces;
    const double b = lo + (hi - lo) * (k + 1) / kPieces;
    re += GK::integrate([&](double w) { return j(w) * std::cos(w * t); }, a, b, 10, 1e-13);
    im -= GK::integrate([&](double w) { return j(w) * std::sin(w * t); }, a, b, 10, 1e-13);
  }
  Complex tails;
  auto right = [&](double x) { return j(hi + x); };
  auto left = [&](double x) { return j(lo - x); };
  if (t == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    tails = GK::integrate(right, 0.0, inf, 15, 1e-13) + GK::integrate(left, 0.0, inf, 15, 1e-13);
  } else {
    boost::math::quadrature::ooura_fourier_cos<double> fcos;
    boost::math::quadrature::ooura_fourier_sin<double> fsin;
    // ∫_0^∞ e^{-i(hi + x)t} J(hi + x) dx and ∫_0^∞ e^{-i(lo - x)t} J(lo - x) dx
    const Complex r(fcos.integrate(right, t).first, -fsin.integrate(right, t).first);
    const Complex l(fcos.integrate(left, t).first, fsin.integrate(left, t).first);
    tails = std::exp(Complex(0.0, -hi * t)) * r + std::exp(Complex(0.0, -lo * t)) * l;
  }
  return (Complex(re, im) + tails) / (2.0 * kPi);
}

Complex resonance_psi1(double g, double gamma, double t) {
  const Complex delta = 0.25 * std::sqrt(Complex(gamma * gamma - 16.0 * g * g));
  return std::exp(-gamma * t / 4.0) * (std::cosh(delta * t) + gamma / (4.0 * delta) * std::sinh(delta * t));
}

}  // namespace

TEST_CASE("memory_kernel examples") {
  const PseudomodeParams p = single(0.4, 1.2, 0.3);
  CHECK(std::abs(memory_kernel(p, 0.0) - 0.16) <= 1e-16);
  CHECK_THROWS_AS(memory_kernel(p, -1e-3), InvalidInput);
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const PseudomodeParams q = rng.lorentzians(rng.integer(1, 4), true);
    double bound = 0.0, gmin = 1e300;
    for (const auto& term : q.terms) {
      bound += std::norm(term.g);
      gmin = std::min(gmin, term.gamma);
    }
    const double t = rng.uniform(0.0, 10.0);
    CHECK(std::abs(memory_kernel(q, t)) <= bound * std::exp(-gmin * t / 2.0) + 1e-15);
  }
}

TEST_CASE("memory kernel is the Fourier transform of the spectral density") {
  Rng rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    const PseudomodeParams p = rng.lorentzians(rng.integer(1, 3));
    for (double t : {0.0, 0.5, 2.0, 5.0}) {
      const Complex ref = fourier_of_density(p, t);
      const Complex got = memory_kernel(p, t);
      CAPTURE(t);
      CHECK(std::abs(got - ref) <= 1e-4 * std::abs(got));
    }
  }
}

TEST_CASE("spectral_density examples") {
  const PseudomodeParams p = single(0.5, 0.8, 1.0);
  CHECK(spectral_density(p, 1.0) == doctest::Approx(4.0 * 0.25 / 0.8).epsilon(1e-15));
  CHECK(spectral_density(p, 1e9) < 1e-17);
  CHECK(spectral_density(p, -1e9) < 1e-17);
  CHECK(spectral_density(p, 0.7) > 0.0);

  PseudomodeParams c = p;
  c.terms[0].g = Complex(0.5, 0.1);
  CHECK_THROWS_AS(spectral_density(c, 1.0), InvalidInput);

  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  Rng rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const PseudomodeParams q = rng.lorentzians(rng.integer(1, 4));
    double sum_g2 = 0.0;
    for (const auto& term : q.terms) sum_g2 += std::norm(term.g);
    const double inf = std::numeric_limits<double>::infinity();
    const double integral = GK::integrate([&](double w) { return spectral_density(q, w); }, -inf, inf, 25, 1e-13);
    CHECK(integral / (2.0 * kPi) == doctest::Approx(sum_g2).epsilon(1e-8));
  }
}

TEST_CASE("build_pseudomode_heff examples") {
  const EffectiveHamiltonian h = build_pseudomode_heff(single(0.7, 1.5, 0.0, 0.0));
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 1) = expect(1, 0) = 0.7;
  expect(1, 1) = Complex(0.0, -0.75);
  CHECK(max_abs(h.matrix() - expect) == 0.0);

  PseudomodeParams frozen = single(0.0, 1.0, 0.0, 0.0);
  const auto times = uniform_grid(5.0, 11);
  const AmplitudeSeries s = pseudomode_amplitude(frozen, 1.0, times);
  for (const Complex& v : s.values) CHECK(std::abs(v - 1.0) <= 1e-15);

  PseudomodeParams bad = single(0.5, 1.0);
  bad.terms[0].gamma = 0.0;
  CHECK_THROWS_AS(build_pseudomode_heff(bad), InvalidInput);
}

TEST_CASE("complex couplings: admissibility is decided numerically") {
  PseudomodeParams p = single(0.5, 1.0);
  p.terms[0].g = Complex(0.5, 0.2);
  CHECK_THROWS_AS(build_pseudomode_heff(p), NotDissipative);
  // kernel still uses g² for complex couplings
  CHECK(std::abs(memory_kernel(p, 0.0) - Complex(0.5, 0.2) * Complex(0.5, 0.2)) <= 1e-16);
}

TEST_CASE("Volterra solver examples") {
  SUBCASE("no memory gives free rotation") {
    PseudomodeParams p = single(0.0, 1.0, 0.0, 1.3);
    const AmplitudeSeries s = solve_volterra(p, VolterraGrid{0.01, 500}, Complex(0.6, 0.8));
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const Complex exact = std::exp(Complex(0.0, -1.3 * s.times[i])) * Complex(0.6, 0.8);
      CHECK(std::abs(s.values[i] - exact) <= 1e-4 * s.times[i] + 1e-15);
    }
  }
  SUBCASE("single resonant term matches the closed form") {
    for (auto [g, gamma] : {std::pair{0.3, 1.0}, std::pair{1.0, 1.0}, std::pair{0.2, 2.0}}) {
      const PseudomodeParams p = single(g, gamma);
      const double h = 1e-3 / gamma;
      const auto steps = static_cast<std::size_t>(std::lround(8.0 / gamma / h));
      const AmplitudeSeries s = solve_volterra(p, VolterraGrid{h, steps}, 1.0);
      double err = 0.0;
      for (std::size_t i = 0; i < s.values.size(); ++i)
        err = std::max(err, std::abs(s.values[i] - resonance_psi1(g, gamma, s.times[i])));
      CAPTURE(g);
      CHECK(err <= 1e-6);
    }
  }
  SUBCASE("halving the step reduces the error fourfold") {
    const PseudomodeParams p = single(0.8, 1.0);
    std::vector<double> errs;
    for (std::size_t steps : {200u, 400u, 800u}) {
      const AmplitudeSeries s = solve_volterra(p, VolterraGrid{8.0 / static_cast<double>(steps), steps}, 1.0);
      double err = 0.0;
      for (std::size_t i = 0; i < s.values.size(); ++i)
        err = std::max(err, std::abs(s.values[i] - resonance_psi1(0.8, 1.0, s.times[i])));
      errs.push_back(err);
    }
    CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.1));
    CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.1));
  }
  SUBCASE("non-uniform grid is rejected") {
    const std::vector<double> t{0.0, 0.1, 0.3};
    CHECK_THROWS_AS(solve_volterra(single(0.3, 1.0), t, 1.0), InvalidInput);
  }
}

TEST_CASE("Richardson-converged Volterra agrees with the pseudomode amplitude") {
  Rng rng(54);
  for (int trial = 0; trial < 4; ++trial) {
    const PseudomodeParams p = rng.lorentzians(rng.integer(1, 3));
    double gmin = 1e300;
    for (const auto& t : p.terms) gmin = std::min(gmin, t.gamma);
    const double t_max = 8.0 / gmin;
    const RichardsonResult r = solve_volterra_converged(p, t_max, 1.0, 1e-8);
    CHECK(r.observed_order == doctest::Approx(2.0).epsilon(0.1));
    const AmplitudeSeries pm = pseudomode_amplitude(p, 1.0, r.series.times);
    double err = 0.0;
    for (std::size_t i = 0; i < pm.values.size(); ++i) {
      err = std::max(err, std::abs(pm.values[i] - r.series.values[i]));
      CHECK(std::abs(pm.values[i]) <= 1.0 + 1e-12);
    }
    CHECK(err <= 1e-6);
  }
}

TEST_CASE("pseudomode amplitudes equal the damped convolution of the system amplitude") {
  Rng rng(55);
  const PseudomodeParams p = rng.lorentzians(3);
  const EffectiveHamiltonian heff = build_pseudomode_heff(p);
  const auto times = uniform_grid(4.0, 4001);
  const double h = times[1];
  Vector psi0 = Vector::Zero(4);
  psi0(0) = 1.0;
  const auto psi = evolve_psi(heff, psi0, times);
  for (std::size_t l = 0; l < 3; ++l) {
    const PseudomodeTerm& term = p.terms[l];
    const Complex rate(0.5 * term.gamma, term.omega);
    double err = 0.0;
    for (std::size_t m : {1000u, 2500u, 4000u}) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j <= m; ++j) {
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        acc += w * std::exp(-rate * (times[m] - times[j])) * psi[j](0);
      }
      const Complex conv = -kI * term.g * h * acc;
      err = std::max(err, std::abs(conv - psi[m](static_cast<Eigen::Index>(l + 1))));
    }
    CHECK(err <= 1e-6);
  }
}

TEST_CASE("discretize_bath structure and errors") {
  const PseudomodeParams p = single(0.4, 1.0, 0.5);
  CHECK_THROWS_AS(discretize_bath(p, 1, 40.0), InvalidInput);
  CHECK_THROWS_AS(discretize_bath(p, 100, 0.5), InvalidInput);
  const DiscretizedBath two = discretize_bath(p, 2, 40.0);
  REQUIRE(two.modes.size() == 2);
  CHECK(two.modes[0].omega == doctest::Approx(-19.5));
  CHECK(two.modes[1].omega == doctest::Approx(20.5));

  double prev_gap = 1e300;
  for (double k : {10.0, 100.0, 1000.0}) {
    const DiscretizedBath b = discretize_bath(p, static_cast<std::size_t>(400 * k), k);
    double s = 0.0;
    for (const auto& m : b.modes) s += m.g * m.g;
    const double gap = std::abs(s - 0.16);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 0.16 * 1e-3);

  PseudomodeParams two_peaks = p;
  two_peaks.terms.push_back({Complex(0.3, 0.0), 0.5, 100.0});
  const DiscretizedBath split = discretize_bath(two_peaks, 300, 5.0);
  CHECK(split.modes.size() == 300);
  CHECK(std::is_sorted(split.modes.begin(), split.modes.end(),
                       [](const BathMode& a, const BathMode& b) { return a.omega < b.omega; }));
}

TEST_CASE("Friedrichs propagation conserves the norm and converges to the pseudomode amplitude") {
  const PseudomodeParams p = single(0.3, 1.0);
  const auto times = uniform_grid(8.0, 401);
  const AmplitudeSeries pm = pseudomode_amplitude(p, 1.0, times);
  const FriedrichsResult fr = evolve_friedrichs(discretize_bath(p, 400, 40.0), 0.0, 1.0, times);
  double err = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(fr.norm[i] - 1.0) <= 1e-12);
    err = std::max(err, std::abs(std::norm(fr.psi1.values[i]) - std::norm(pm.values[i])));
  }
  CHECK(err <= 2e-3);

  const FriedrichsResult free = evolve_friedrichs(discretize_bath(single(0.0, 1.0), 50, 10.0), 0.7, 1.0, times);
  for (const Complex& v : free.psi1.values) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-13);
}

TEST_CASE("reduced_density_matrix examples") {
  const DensityMatrix vac = reduced_density_matrix(Complex(0.6), Complex(0.8), Complex(0.0));
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 1.0;
  CHECK(max_abs(vac.matrix() - expect) == 0.0);

  const DensityMatrix pop = reduced_density_matrix(Complex(0.0), Complex(1.0), Complex(0.0, std::sqrt(0.3)));
  CHECK(pop(0, 0).real() == doctest::Approx(0.7));
  CHECK(pop(1, 1).real() == doctest::Approx(0.3));
  CHECK(std::abs(pop(0, 1)) == 0.0);

  CHECK_THROWS_AS(reduced_density_matrix(Complex(0.5), Complex(0.5), Complex(0.1)), InvalidInput);
}

TEST_CASE("reduced density matrix equals the traced GKSL trajectory of the pseudomode model") {
  Rng rng(56);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = rng.integer(1, 3);
    const PseudomodeParams p = rng.lorentzians(n);
    const double theta = rng.uniform(0.0, kPi / 2);
    const Complex c0 = std::cos(theta);
    const Complex c1 = std::sin(theta) * std::exp(Complex(0.0, rng.uniform(0.0, 2.0 * kPi)));
    const auto times = uniform_grid(6.0, 31);
    const AmplitudeSeries amp = pseudomode_amplitude(p, c1, times);

    Vector psi = Vector::Zero(n + 2);
    psi(0) = c0;
    psi(1) = c1;
    const Trajectory tr =
        propagate(build_gksl_from_heff(build_pseudomode_heff(p)), DensityMatrix(psi * psi.adjoint()), times);
    std::vector<int> modes;
    for (int l = 2; l <= n + 1; ++l) modes.push_back(l);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const ReducedState red = partial_trace_over_indices(DensityMatrix(tr.states[i]), IndexSet(modes));
      const DensityMatrix rs = reduced_density_matrix(c0, c1, amp.values[i]);
      CHECK(max_abs(red.rho.matrix() - rs.matrix()) <= 1e-9);
    }
  }
}
