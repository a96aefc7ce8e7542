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

#include "openq/secondquant.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace openq {

namespace {

void check_modes(int n_modes) {
  if (n_modes < 1 || n_modes > kMaxModes) {
    throw InvalidInput("mode count " + std::to_string(n_modes) + " outside 1.." +
                       std::to_string(kMaxModes));
  }
}

}  // namespace

std::size_t one_particle_index(int l, int n_modes) {
  if (l < 0 || l > n_modes) throw InvalidInput("one_particle_index: index out of range");
  return l == 0 ? 0 : std::size_t{1} << (n_modes - l);
}

TensorState embed_one_particle(const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.dim()) - 1;
  check_modes(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Matrix out = Matrix::Zero(dim, dim);
  for (int l = 0; l <= n; ++l) {
    for (int k = 0; k <= n; ++k) {
      out(static_cast<Eigen::Index>(one_particle_index(l, n)),
          static_cast<Eigen::Index>(one_particle_index(k, n))) = rho(l, k);
    }
  }
  return TensorState{n, DensityMatrix::unchecked(std::move(out))};
}

Unembedded unembed_one_particle(const Matrix& rho_hat, int n_modes) {
  check_modes(n_modes);
  if (rho_hat.rows() != (Eigen::Index{1} << n_modes)) {
    throw DimensionMismatch("unembed_one_particle: matrix is not 2^n x 2^n");
  }
  Unembedded out;
  out.rho.resize(n_modes + 1, n_modes + 1);
  for (int l = 0; l <= n_modes; ++l) {
    for (int k = 0; k <= n_modes; ++k) {
      out.rho(l, k) = rho_hat(static_cast<Eigen::Index>(one_particle_index(l, n_modes)),
                              static_cast<Eigen::Index>(one_particle_index(k, n_modes)));
    }
  }
  out.leakage = sector_leakage(rho_hat, n_modes);
  return out;
}

double sector_leakage(const Matrix& rho_hat, int n_modes) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < rho_hat.rows(); ++i) {
    if (std::popcount(static_cast<unsigned long>(i)) > 1) total += rho_hat(i, i).real();
  }
  (void)n_modes;
  return total;
}

Matrix mode_lowering(int l, int n_modes) {
  check_modes(n_modes);
  if (l < 1 || l > n_modes) throw InvalidInput("mode_lowering: mode index out of range");
  const auto dim = Eigen::Index{1} << n_modes;
  const Eigen::Index bit = Eigen::Index{1} << (n_modes - l);
  Matrix s = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & bit) s(i & ~bit, i) = 1.0;
  }
  return s;
}

namespace {

Matrix second_quantized_hamiltonian(const Matrix& h, int n) {
  const auto dim = Eigen::Index{1} << n;
  std::vector<Matrix> lowering;
  for (int l = 1; l <= n; ++l) lowering.push_back(mode_lowering(l, n));
  Matrix out = Matrix::Zero(dim, dim);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      if (h(l, k) != Complex(0.0)) out += h(l, k) * lowering[l].adjoint() * lowering[k];
    }
  }
  return out;
}

}  // namespace

LindbladModel build_second_quantized_gksl(const Matrix& h, std::span<const double> gammas) {
  const int n = static_cast<int>(h.rows());
  check_modes(n);
  if (h.cols() != n || static_cast<int>(gammas.size()) != n) {
    throw DimensionMismatch("build_second_quantized_gksl: H must be n x n with n rates");
  }
  std::vector<Matrix> jumps;
  for (int l = 1; l <= n; ++l) {
    const double g = gammas[static_cast<std::size_t>(l - 1)];
    if (g < 0.0) throw InvalidInput("build_second_quantized_gksl: negative rate");
    if (g < kMinJumpRate) continue;
    jumps.push_back(std::sqrt(g) * mode_lowering(l, n));
  }
  return LindbladModel(second_quantized_hamiltonian(h, n), std::move(jumps));
}

LindbladModel build_second_quantized_gksl(const HeffDecomposition& dec) {
  const int n = static_cast<int>(dec.dim());
  check_modes(n);
  std::vector<Matrix> lowering;
  for (int l = 1; l <= n; ++l) lowering.push_back(mode_lowering(l, n));
  std::vector<Matrix> jumps;
  for (std::size_t c = 0; c < dec.gammas.size(); ++c) {
    if (dec.gammas[c] < kMinJumpRate) continue;
    const auto v = dec.basis.col(static_cast<Eigen::Index>(c));
    Matrix jump = Matrix::Zero(lowering[0].rows(), lowering[0].cols());
    for (int j = 0; j < n; ++j) jump += std::conj(v(j)) * lowering[static_cast<std::size_t>(j)];
    jumps.push_back(std::sqrt(dec.gammas[c]) * jump);
  }
  return LindbladModel(second_quantized_hamiltonian(dec.hermitian, n), std::move(jumps));
}

TensorState partial_trace_tensor(const TensorState& state, const IndexSet& traced) {
  const int n = state.n_modes;
  if (!traced.empty() && traced.indices().back() > n) {
    throw InvalidInput("partial_trace_tensor: mode index out of range");
  }
  std::vector<int> kept;
  for (int l = 1; l <= n; ++l) {
    if (!traced.contains(l)) kept.push_back(l);
  }
  const int m = static_cast<int>(kept.size());
  const int t = n - m;
  std::vector<int> gone(traced.indices().begin(), traced.indices().end());

  // Scatter a reduced index over the bits of the given modes.
  auto spread = [n](std::size_t idx, const std::vector<int>& modes) {
    std::size_t full = 0;
    const int count = static_cast<int>(modes.size());
    for (int p = 0; p < count; ++p) {
      if (idx & (std::size_t{1} << (count - 1 - p))) full |= std::size_t{1} << (n - modes[p]);
    }
    return full;
  };

  const std::size_t out_dim = std::size_t{1} << m;
  const std::size_t env_dim = std::size_t{1} << t;
  std::vector<std::size_t> kept_pos(out_dim), env_pos(env_dim);
  for (std::size_t a = 0; a < out_dim; ++a) kept_pos[a] = spread(a, kept);
  for (std::size_t e = 0; e < env_dim; ++e) env_pos[e] = spread(e, gone);

  const Matrix& in = state.rho.matrix();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(out_dim));
  for (std::size_t a = 0; a < out_dim; ++a) {
    for (std::size_t b = 0; b < out_dim; ++b) {
      Complex acc = 0.0;
      for (std::size_t e = 0; e < env_dim; ++e) {
        acc += in(static_cast<Eigen::Index>(kept_pos[a] | env_pos[e]),
                  static_cast<Eigen::Index>(kept_pos[b] | env_pos[e]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
    }
  }
  return TensorState{m, DensityMatrix::unchecked(std::move(out))};
}

}  // namespace openq
