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

// Complex-double inner loops with a scalar reference implementation and
// SIMD variants (AVX2+FMA on x86-64, NEON on aarch64). The active variant is
// picked once at startup from CPU features; OPENQ_KERNELS=scalar|avx2|neon
// overrides the choice.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace openq::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

/// Function table for one backend. All spans must have matching lengths.
struct KernelTable {
  Backend backend;
  /// sum_i a[i] * b[i] (no conjugation)
  cplx (*dot)(std::span<const cplx> a, std::span<const cplx> b);
  /// y[r] = sum_c A[r*cols + c] * x[c], A row-major rows x cols
  void (*gemv)(std::span<const cplx> A, std::size_t rows, std::size_t cols,
               std::span<const cplx> x, std::span<cplx> y);
  /// y += alpha * x
  void (*axpy)(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
  /// max_i |a[i] - b[i]|
  double (*max_abs_diff)(std::span<const cplx> a, std::span<const cplx> b);
};

/// Backends compiled in and supported by the running CPU. Scalar is always first.
std::vector<Backend> available_backends();

const KernelTable& table(Backend b);

/// The dispatched table used by the library.
const KernelTable& active();

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  return active().dot(a, b);
}
inline void gemv(std::span<const cplx> A, std::size_t rows, std::size_t cols,
                 std::span<const cplx> x, std::span<cplx> y) {
  active().gemv(A, rows, cols, x, y);
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(alpha, x, y);
}
inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  return active().max_abs_diff(a, b);
}

}  // namespace openq::kernels
