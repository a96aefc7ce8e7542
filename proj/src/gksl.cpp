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

#include "openq/gksl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "detail/linalg.hpp"
#include "openq/kernels.hpp"

namespace openq {

LindbladModel::LindbladModel(Matrix hamiltonian, std::vector<Matrix> jumps, const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  const Eigen::Index d = hamiltonian_.rows();
  if (d == 0 || hamiltonian_.cols() != d) throw InvalidInput("LindbladModel: H must be square");
  if (hermiticity_defect(hamiltonian_) > tol.herm) {
    throw InvalidInput("LindbladModel: H is not Hermitian");
  }
  Matrix k = Matrix::Zero(d, d);
  for (const Matrix& l : jumps_) {
    if (l.rows() != d || l.cols() != d) {
      throw InvalidInput("LindbladModel: jump operator dimension differs from H");
    }
    k += l.adjoint() * l;
  }
  nonhermitian_ = hamiltonian_ - Complex(0.0, 0.5) * k;
}

Matrix LindbladModel::apply(const Matrix& rho) const {
  Matrix out = -kI * (nonhermitian_ * rho - rho * nonhermitian_.adjoint());
  for (const Matrix& l : jumps_) out.noalias() += l * rho * l.adjoint();
  return out;
}

LindbladModel build_gksl_from_decomposition(const HeffDecomposition& dec) {
  const Eigen::Index n = dec.dim();
  Matrix h = Matrix::Zero(n + 1, n + 1);
  h.bottomRightCorner(n, n) = dec.hermitian;
  std::vector<Matrix> jumps;
  for (std::size_t l = 0; l < dec.gammas.size(); ++l) {
    if (dec.gammas[l] < kMinJumpRate) continue;
    Matrix jump = Matrix::Zero(n + 1, n + 1);
    // √γ |0⟩⟨l|, ⟨l| the conjugated decay vector on indices 1..n
    jump.block(0, 1, 1, n) = std::sqrt(dec.gammas[l]) *
                             dec.basis.col(static_cast<Eigen::Index>(l)).adjoint();
    jumps.push_back(std::move(jump));
  }
  return LindbladModel(std::move(h), std::move(jumps));
}

LindbladModel build_gksl_from_heff(const EffectiveHamiltonian& heff, const Tolerances& tol) {
  return build_gksl_from_decomposition(decompose_heff(heff, tol));
}

Superoperator liouvillian_matrix(const LindbladModel& model) {
  const Eigen::Index d = model.dim();
  const Matrix id = Matrix::Identity(d, d);
  Matrix k = Matrix::Zero(d, d);
  for (const Matrix& l : model.jumps()) k += l.adjoint() * l;
  const Matrix hnh = model.hamiltonian() - Complex(0.0, 0.5) * k;
  Matrix lv = -kI * detail::sandwich(hnh, id) + kI * detail::sandwich(id, hnh.adjoint());
  for (const Matrix& l : model.jumps()) lv += detail::sandwich(l, l.adjoint());
  return Superoperator{d, std::move(lv)};
}

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool same_step(double a, double b) { return std::abs(a - b) <= 1e-13 * std::max(a, b); }

class DenseStepper {
 public:
  explicit DenseStepper(const LindbladModel& model) : lv_(liouvillian_matrix(model).mat) {}

  void advance(Vector& v, double dt) {
    if (dt == 0.0) return;
    if (!have_step_ || !same_step(dt, step_)) {
      step_ = dt;
      prop_ = (lv_ * dt).exp();
      have_step_ = true;
    }
    scratch_.resize(v.size());
    const auto n = static_cast<std::size_t>(v.size());
    kernels::gemv({prop_.data(), n * n}, n, n, {v.data(), n}, {scratch_.data(), n});
    v.swap(scratch_);
  }

 private:
  Matrix lv_;
  RowMatrix prop_;
  double step_ = 0.0;
  bool have_step_ = false;
  Vector scratch_;
};

// exp(ℒ dt) ρ by a truncated Taylor series on substeps with ‖ℒ‖τ <= 2.
class TaylorStepper {
 public:
  explicit TaylorStepper(const LindbladModel& model) : model_(model) {
    Matrix k = Matrix::Zero(model.dim(), model.dim());
    double jump_norm = 0.0;
    for (const Matrix& l : model.jumps()) {
      k += l.adjoint() * l;
      jump_norm += l.squaredNorm();
    }
    const Matrix hnh = model.hamiltonian() - Complex(0.0, 0.5) * k;
    norm_bound_ = 2.0 * hnh.norm() + jump_norm;
  }

  void advance(Matrix& rho, double dt) const {
    if (dt == 0.0) return;
    const double steps = std::max(1.0, std::ceil(norm_bound_ * dt / kTheta));
    const double tau = dt / steps;
    for (int s = 0; s < static_cast<int>(steps); ++s) {
      Matrix term = rho;
      Matrix sum = rho;
      for (int k = 1; k <= kMaxTerms; ++k) {
        term = (tau / k) * model_.apply(term);
        sum += term;
        if (term.norm() <= 1e-17 * sum.norm()) break;
      }
      rho.swap(sum);
    }
  }

 private:
  static constexpr double kTheta = 2.0;
  static constexpr int kMaxTerms = 80;
  const LindbladModel& model_;
  double norm_bound_ = 0.0;
};

}  // namespace

Trajectory propagate(const LindbladModel& model, const DensityMatrix& rho0,
                     std::span<const double> times, const PropagateOptions& opts) {
  if (rho0.dim() != model.dim()) throw DimensionMismatch("propagate: ρ₀ and model dimensions differ");
  check_time_grid(times);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  const Eigen::Index d = model.dim();
  const bool dense = d <= opts.dense_dim_limit;
  traj.metadata["solver"] = dense ? "dense-superoperator-exp" : "taylor-exp-action";
  traj.metadata["dim"] = std::to_string(d);
  traj.metadata["jumps"] = std::to_string(model.jumps().size());

  double t_prev = 0.0;
  if (dense) {
    DenseStepper stepper(model);
    Vector v = vec(rho0.matrix());
    for (double t : times) {
      stepper.advance(v, t - t_prev);
      t_prev = t;
      traj.states.push_back(unvec(v, d));
    }
  } else {
    const TaylorStepper stepper(model);
    Matrix rho = rho0.matrix();
    for (double t : times) {
      stepper.advance(rho, t - t_prev);
      t_prev = t;
      traj.states.push_back(rho);
    }
  }
  return traj;
}

}  // namespace openq
