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

// One-particle second quantization into n two-level modes.
//
// Mode l (1..n) is tensor factor l; factor 1 is the most significant bit of
// the 2^n basis index. The one-particle state |l̂⟩ therefore has index
// 1 << (n - l), and the vacuum |0̂⟩ = |0…0⟩ has index 0.

#include "openq/gksl.hpp"

namespace openq {

inline constexpr int kMaxModes = 12;

struct TensorState {
  int n_modes = 0;
  DensityMatrix rho = DensityMatrix::unchecked(Matrix::Zero(1, 1));
};

/// Basis index of |l̂⟩ in the 2^n space (l = 0 is the vacuum).
std::size_t one_particle_index(int l, int n_modes);

/// ρ̂ = Σ ρ_lk |l̂⟩⟨k̂| for ρ on {0, …, n}. Throws InvalidInput for n > kMaxModes.
TensorState embed_one_particle(const DensityMatrix& rho);

struct Unembedded {
  Matrix rho;          ///< (n+1) x (n+1) one-particle block
  double leakage = 0;  ///< Tr ρ̂ - Tr(one-particle block), weight outside the sector
};

/// Reads ρ_lk off the one-particle positions. Weight outside the sector is
/// reported, not renormalized.
Unembedded unembed_one_particle(const Matrix& rho_hat, int n_modes);

/// Total population outside span{|0̂⟩, …, |n̂⟩}.
double sector_leakage(const Matrix& rho_hat, int n_modes);

/// σ_l acting on factor l: |0⟩⟨1| on that mode, identity elsewhere.
Matrix mode_lowering(int l, int n_modes);

/// Hamiltonian Σ_lk H_lk σ_l†σ_k and jumps √γ_l σ_l on 2^n levels.
LindbladModel build_second_quantized_gksl(const Matrix& h, std::span<const double> gammas);

/// Second quantization of the GKSL model built from a decomposition: jumps
/// √γ_l Σ_j conj(v_l[j]) σ_j for decay vectors v_l not aligned with the modes.
LindbladModel build_second_quantized_gksl(const HeffDecomposition& dec);

/// Generic partial trace over the tensor factors in `traced` (1-based modes).
TensorState partial_trace_tensor(const TensorState& state, const IndexSet& traced);

}  // namespace openq
