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

#include "openq/nonhermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace openq {

namespace {
// Eigenvector-route error grows like cond(V)·eps; beyond this use Padé.
constexpr double kMaxEigenvectorCondition = 1e4;
}  // namespace

EffectiveHamiltonian::EffectiveHamiltonian(Matrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw InvalidInput("EffectiveHamiltonian: matrix must be square and non-empty");
  }
  if (!mat_.allFinite()) throw InvalidInput("EffectiveHamiltonian: non-finite entries");
}

Matrix HeffDecomposition::reconstruct() const {
  Matrix out = hermitian;
  for (std::size_t l = 0; l < gammas.size(); ++l) {
    const auto col = basis.col(static_cast<Eigen::Index>(l));
    out -= Complex(0.0, 0.5 * gammas[l]) * (col * col.adjoint());
  }
  return out;
}

HeffDecomposition decompose_heff(const EffectiveHamiltonian& heff, const Tolerances& tol) {
  const Matrix& m = heff.matrix();
  HeffDecomposition dec;
  dec.hermitian = 0.5 * (m + m.adjoint());
  // -(H_eff - H_eff†)/i = i(H_eff - H_eff†), Hermitian with eigenvalues γ_l.
  Matrix rates = kI * (m - m.adjoint());
  rates = 0.5 * (rates + rates.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(rates);
  const RealVector& ev = es.eigenvalues();
  if (ev.minCoeff() < -tol.psd) {
    throw NotDissipative("H_eff anti-Hermitian part has a growing direction (rate " +
                         std::to_string(ev.minCoeff()) + ")");
  }
  dec.basis = es.eigenvectors();
  dec.gammas.resize(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    dec.gammas[static_cast<std::size_t>(i)] = std::max(ev(i), 0.0);
  }
  return dec;
}

double trace_decay_rate(const NonNormalizedDensityMatrix& r, const HeffDecomposition& dec) {
  if (r.dim() != dec.dim()) throw DimensionMismatch("trace_decay_rate: dimensions differ");
  double rate = 0.0;
  for (std::size_t l = 0; l < dec.gammas.size(); ++l) {
    const auto col = dec.basis.col(static_cast<Eigen::Index>(l));
    const double pop = (col.adjoint() * r.matrix() * col)(0, 0).real();
    rate -= dec.gammas[l] * pop;
  }
  return rate;
}

NonHermitianPropagator::NonHermitianPropagator(const EffectiveHamiltonian& heff)
    : generator_(-kI * heff.matrix()) {
  Eigen::ComplexEigenSolver<Matrix> es(generator_);
  if (es.info() == Eigen::Success) {
    const Matrix& v = es.eigenvectors();
    Eigen::JacobiSVD<Matrix> svd(v);
    const RealVector& sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    if (std::isfinite(cond) && cond < kMaxEigenvectorCondition) {
      diagonal_ = true;
      vecs_ = v;
      vecs_inv_ = v.inverse();
      eigs_ = es.eigenvalues();
    }
  }
}

Matrix NonHermitianPropagator::at(double t) const {
  if (diagonal_) {
    const Vector phase = (eigs_ * t).array().exp().matrix();
    return vecs_ * phase.asDiagonal() * vecs_inv_;
  }
  return (generator_ * t).exp();
}

std::vector<NonNormalizedDensityMatrix> evolve_R(const EffectiveHamiltonian& heff,
                                                 const NonNormalizedDensityMatrix& r0,
                                                 std::span<const double> times,
                                                 const Tolerances& tol) {
  if (r0.dim() != heff.dim()) throw DimensionMismatch("evolve_R: R₀ and H_eff dimensions differ");
  decompose_heff(heff, tol);
  const NonHermitianPropagator prop(heff);
  std::vector<NonNormalizedDensityMatrix> out;
  out.reserve(times.size());
  for (double t : times) {
    const Matrix u = prop.at(t);
    Matrix r = u * r0.matrix() * u.adjoint();
    r = 0.5 * (r + r.adjoint());
    out.push_back(NonNormalizedDensityMatrix::unchecked(std::move(r)));
  }
  return out;
}

std::vector<Vector> evolve_psi(const EffectiveHamiltonian& heff, const Vector& psi0,
                               std::span<const double> times, const Tolerances& tol) {
  if (psi0.size() != heff.dim()) throw DimensionMismatch("evolve_psi: ψ₀ and H_eff dimensions differ");
  decompose_heff(heff, tol);
  const NonHermitianPropagator prop(heff);
  std::vector<Vector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(prop.at(t) * psi0);
  return out;
}

}  // namespace openq
