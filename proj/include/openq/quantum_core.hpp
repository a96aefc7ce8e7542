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

// Dense state utilities shared by every module.
//
// Basis convention: when a state is extended by a vacuum level, the vacuum
// occupies row/column 0 and the original indices shift to 1..n.

#include <optional>
#include <span>
#include <vector>

#include "openq/types.hpp"

namespace openq {

/// Hermiticity, spectrum and trace diagnostics for a candidate state.
struct DensityReport {
  double hermiticity_defect = 0.0;  ///< max |ρ_ij - conj(ρ_ji)|
  double min_eigenvalue = 0.0;      ///< of (ρ + ρ†)/2
  double trace_real = 0.0;
  double trace_imag = 0.0;
  double trace_deviation = 0.0;  ///< |Tr ρ - 1| (normalized) or excess over [0, 1] (non-normalized)
  bool hermitian_ok = false;
  bool psd_ok = false;
  bool trace_ok = false;

  bool ok() const { return hermitian_ok && psd_ok && trace_ok; }
};

/// Checks a matrix against the density-matrix invariants. Never throws.
DensityReport validate_density_matrix(const Matrix& rho, const Tolerances& tol = {});

/// Same diagnostics, trace condition 0 <= Tr <= 1 + tol.tr instead of Tr = 1.
DensityReport validate_nonnormalized(const Matrix& r, const Tolerances& tol = {});

double hermiticity_defect(const Matrix& m);
double min_hermitian_eigenvalue(const Matrix& m);

/// Hermitian PSD operator with trace at most one.
class NonNormalizedDensityMatrix {
 public:
  /// Throws InvalidInput when the invariants fail at `tol`.
  explicit NonNormalizedDensityMatrix(Matrix m, const Tolerances& tol = {});

  static NonNormalizedDensityMatrix unchecked(Matrix m);

  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  double trace() const { return mat_.trace().real(); }

 private:
  struct Unchecked {};
  NonNormalizedDensityMatrix(Matrix m, Unchecked) : mat_(std::move(m)) {}
  Matrix mat_;
};

/// Hermitian PSD operator with unit trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, const Tolerances& tol = {});

  static DensityMatrix unchecked(Matrix m);

  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return mat_(i, j); }

 private:
  struct Unchecked {};
  DensityMatrix(Matrix m, Unchecked) : mat_(std::move(m)) {}
  Matrix mat_;
};

/// ρ = R ⊕ 0 + (1 - Tr R)|0⟩⟨0| with the vacuum prepended at index 0.
/// Throws InvalidInput when Tr R exceeds 1 + tol.tr.
DensityMatrix normalization_reconstruction(const NonNormalizedDensityMatrix& r,
                                           const Tolerances& tol = {});

/// Sorted set of indices in 1..n. Index 0 (vacuum) is never traced out.
class IndexSet {
 public:
  IndexSet() = default;
  /// Throws InvalidInput on 0 or negative entries; duplicates collapse.
  IndexSet(std::initializer_list<int> indices);
  explicit IndexSet(std::vector<int> indices);

  std::span<const int> indices() const { return indices_; }
  bool contains(int i) const;
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

 private:
  std::vector<int> indices_;
};

/// Result of tracing out an index set.
struct ReducedState {
  DensityMatrix rho;
  /// kept[new_index] = old_index; kept[0] == 0.
  std::vector<int> kept;

  /// New position of an old index, or nullopt when it was traced out.
  std::optional<int> new_index(int old_index) const;
};

/// Tr_I ρ = ρ_Ī + (ρ_00 + Σ_{l∈I} ρ_ll)|0⟩⟨0|, returned on the reduced index set.
ReducedState partial_trace_over_indices(const DensityMatrix& rho, const IndexSet& traced);

/// Linear map on dim x dim matrices stored as a dim² x dim² matrix acting on
/// row-major vectorizations: vec(X)[i*dim + j] = X(i, j).
struct Superoperator {
  Eigen::Index dim = 0;
  Matrix mat;

  Matrix operator()(const Matrix& x) const;
  Superoperator& operator+=(const Superoperator& o);
};

Superoperator operator*(double s, Superoperator op);
Superoperator operator+(Superoperator a, const Superoperator& b);

/// Row-major vectorization.
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Eigen::Index dim);

/// D_lk(ρ) = |k⟩⟨l|ρ|l⟩⟨k| - ½|l⟩⟨l|ρ - ½ρ|l⟩⟨l|, a decay channel l → k.
Superoperator dissipator_D(int l, int k, int dim);

/// h_kl(ρ) = -i[|k⟩⟨l| + |l⟩⟨k|, ρ].
Superoperator coherent_coupling_h(int k, int l, int dim);

/// |i⟩⟨j| in dimension dim.
Matrix ket_bra(int i, int j, int dim);

}  // namespace openq
