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

#include "openq/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "detail/linalg.hpp"

namespace openq {

double hermiticity_defect(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_hermitian_eigenvalue(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

DensityReport spectral_part(const Matrix& m, const Tolerances& tol) {
  DensityReport rep;
  if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite()) {
    rep.hermiticity_defect = std::numeric_limits<double>::infinity();
    rep.min_eigenvalue = -std::numeric_limits<double>::infinity();
    rep.trace_deviation = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.hermiticity_defect = hermiticity_defect(m);
  rep.min_eigenvalue = min_hermitian_eigenvalue(m);
  const Complex tr = m.trace();
  rep.trace_real = tr.real();
  rep.trace_imag = tr.imag();
  rep.hermitian_ok = rep.hermiticity_defect <= tol.herm;
  rep.psd_ok = rep.min_eigenvalue >= -tol.psd;
  return rep;
}

}  // namespace

DensityReport validate_density_matrix(const Matrix& rho, const Tolerances& tol) {
  DensityReport rep = spectral_part(rho, tol);
  if (!std::isfinite(rep.trace_deviation)) return rep;
  rep.trace_deviation = std::abs(Complex(rep.trace_real, rep.trace_imag) - 1.0);
  rep.trace_ok = rep.trace_deviation <= tol.tr;
  return rep;
}

DensityReport validate_nonnormalized(const Matrix& r, const Tolerances& tol) {
  DensityReport rep = spectral_part(r, tol);
  if (!std::isfinite(rep.trace_deviation)) return rep;
  const double excess = std::max({rep.trace_real - 1.0, -rep.trace_real, 0.0});
  rep.trace_deviation = std::max(excess, std::abs(rep.trace_imag));
  rep.trace_ok = rep.trace_deviation <= tol.tr;
  return rep;
}

namespace {

std::string describe(const DensityReport& rep) {
  return "hermiticity defect " + std::to_string(rep.hermiticity_defect) + ", min eigenvalue " +
         std::to_string(rep.min_eigenvalue) + ", trace deviation " +
         std::to_string(rep.trace_deviation);
}

}  // namespace

NonNormalizedDensityMatrix::NonNormalizedDensityMatrix(Matrix m, const Tolerances& tol)
    : mat_(std::move(m)) {
  const DensityReport rep = validate_nonnormalized(mat_, tol);
  if (!rep.ok()) {
    throw InvalidInput("not a non-normalized density matrix: " + describe(rep));
  }
}

NonNormalizedDensityMatrix NonNormalizedDensityMatrix::unchecked(Matrix m) {
  return NonNormalizedDensityMatrix(std::move(m), Unchecked{});
}

DensityMatrix::DensityMatrix(Matrix m, const Tolerances& tol) : mat_(std::move(m)) {
  const DensityReport rep = validate_density_matrix(mat_, tol);
  if (!rep.ok()) {
    throw InvalidInput("not a density matrix: " + describe(rep));
  }
}

DensityMatrix DensityMatrix::unchecked(Matrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

DensityMatrix normalization_reconstruction(const NonNormalizedDensityMatrix& r,
                                           const Tolerances& tol) {
  const Eigen::Index n = r.dim();
  const double tr = r.trace();
  if (tr > 1.0 + tol.tr) {
    throw InvalidInput("normalization_reconstruction: Tr R = " + std::to_string(tr) + " > 1");
  }
  Matrix rho = Matrix::Zero(n + 1, n + 1);
  rho.bottomRightCorner(n, n) = r.matrix();
  // Diagonal real parts of R sum to tr, so Tr ρ = 1 up to one rounding.
  double vacuum = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) vacuum -= r.matrix()(i, i).real();
  rho(0, 0) = vacuum;
  return DensityMatrix::unchecked(std::move(rho));
}

IndexSet::IndexSet(std::initializer_list<int> indices) : IndexSet(std::vector<int>(indices)) {}

IndexSet::IndexSet(std::vector<int> indices) : indices_(std::move(indices)) {
  for (int i : indices_) {
    if (i <= 0) {
      throw InvalidInput("IndexSet: index " + std::to_string(i) +
                         " not allowed (vacuum 0 is never traced out)");
    }
  }
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool IndexSet::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::optional<int> ReducedState::new_index(int old_index) const {
  auto it = std::find(kept.begin(), kept.end(), old_index);
  if (it == kept.end()) return std::nullopt;
  return static_cast<int>(it - kept.begin());
}

ReducedState partial_trace_over_indices(const DensityMatrix& rho, const IndexSet& traced) {
  const int n = static_cast<int>(rho.dim()) - 1;
  if (!traced.empty() && traced.indices().back() > n) {
    throw InvalidInput("partial_trace_over_indices: index " +
                       std::to_string(traced.indices().back()) + " out of range 1.." +
                       std::to_string(n));
  }
  std::vector<int> kept;
  for (int i = 0; i <= n; ++i) {
    if (!traced.contains(i)) kept.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(kept.size());
  Matrix out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      out(a, b) = rho(kept[a], kept[b]);
    }
  }
  for (int l : traced.indices()) out(0, 0) += rho(l, l);
  return ReducedState{DensityMatrix::unchecked(std::move(out)), std::move(kept)};
}

Vector vec(const Matrix& x) {
  const Eigen::Index d = x.rows();
  Vector v(d * x.cols());
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
  }
  return v;
}

Matrix unvec(const Vector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw DimensionMismatch("unvec: length is not dim²");
  Matrix x(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) x(i, j) = v(i * dim + j);
  }
  return x;
}

Matrix Superoperator::operator()(const Matrix& x) const {
  if (x.rows() != dim || x.cols() != dim) {
    throw DimensionMismatch("superoperator applied to a matrix of the wrong dimension");
  }
  return unvec(mat * vec(x), dim);
}

Superoperator& Superoperator::operator+=(const Superoperator& o) {
  if (o.dim != dim) throw DimensionMismatch("superoperator sum: dimensions differ");
  mat += o.mat;
  return *this;
}

Superoperator operator*(double s, Superoperator op) {
  op.mat *= s;
  return op;
}

Superoperator operator+(Superoperator a, const Superoperator& b) {
  a += b;
  return a;
}

Matrix ket_bra(int i, int j, int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  m(i, j) = 1.0;
  return m;
}

namespace {

void check_pair(const char* what, int a, int b, int dim) {
  if (dim < 1 || a < 0 || b < 0 || a >= dim || b >= dim) {
    throw InvalidInput(std::string(what) + ": index out of range for dimension " +
                       std::to_string(dim));
  }
  if (a == b) throw InvalidInput(std::string(what) + ": indices must differ");
}

}  // namespace

Superoperator dissipator_D(int l, int k, int dim) {
  check_pair("dissipator_D", l, k, dim);
  const Matrix jump = ket_bra(k, l, dim);
  const Matrix proj = ket_bra(l, l, dim);
  const Matrix id = Matrix::Identity(dim, dim);
  Superoperator op{dim, detail::sandwich(jump, jump.adjoint())};
  op.mat -= 0.5 * (detail::sandwich(proj, id) + detail::sandwich(id, proj));
  return op;
}

Superoperator coherent_coupling_h(int k, int l, int dim) {
  check_pair("coherent_coupling_h", k, l, dim);
  const Matrix x = ket_bra(k, l, dim) + ket_bra(l, k, dim);
  const Matrix id = Matrix::Identity(dim, dim);
  return Superoperator{dim, -kI * (detail::sandwich(x, id) - detail::sandwich(id, x))};
}

}  // namespace openq
