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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "tables.hpp"

namespace openq::kernels::detail {
namespace {

// Two complex doubles per register, interleaved [re0, im0, re1, im1].
// Products are accumulated as a*re(b) and swap(a)*im(b); one addsub at the
// end yields the complex sum.

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

cplx dot_avx2(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = a.size();
  const cplx* pa = a.data();
  const cplx* pb = b.data();
  __m256d acc_re0 = _mm256_setzero_pd(), acc_im0 = _mm256_setzero_pd();
  __m256d acc_re1 = _mm256_setzero_pd(), acc_im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = load2(pa + i), vb0 = load2(pb + i);
    const __m256d va1 = load2(pa + i + 2), vb1 = load2(pb + i + 2);
    acc_re0 = _mm256_fmadd_pd(va0, _mm256_movedup_pd(vb0), acc_re0);
    acc_im0 = _mm256_fmadd_pd(_mm256_permute_pd(va0, 0x5), _mm256_permute_pd(vb0, 0xF), acc_im0);
    acc_re1 = _mm256_fmadd_pd(va1, _mm256_movedup_pd(vb1), acc_re1);
    acc_im1 = _mm256_fmadd_pd(_mm256_permute_pd(va1, 0x5), _mm256_permute_pd(vb1, 0xF), acc_im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load2(pa + i), vb = load2(pb + i);
    acc_re0 = _mm256_fmadd_pd(va, _mm256_movedup_pd(vb), acc_re0);
    acc_im0 = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), _mm256_permute_pd(vb, 0xF), acc_im0);
  }
  const __m256d sum =
      _mm256_addsub_pd(_mm256_add_pd(acc_re0, acc_re1), _mm256_add_pd(acc_im0, acc_im1));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, sum);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    const cplx p = pa[i] * pb[i];
    re += p.real();
    im += p.imag();
  }
  return {re, im};
}

void gemv_avx2(std::span<const cplx> A, std::size_t rows, std::size_t cols,
               std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = dot_avx2(A.subspan(r * cols, cols), x);
  }
}

void axpy_avx2(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t n = x.size();
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  double* py = reinterpret_cast<double*>(y.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = load2(x.data() + i);
    const __m256d t = _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), aim);
    const __m256d prod = _mm256_fmaddsub_pd(vx, are, t);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
  }
  for (; i < n; ++i) {
    y[i] += alpha * x[i];
  }
}

double max_abs_diff_avx2(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = a.size();
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(load2(a.data() + i), load2(b.data() + i));
    const __m256d sq = _mm256_mul_pd(d, d);
    // re² + im² in both lanes of each complex
    m = _mm256_max_pd(m, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double best = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    best = std::max(best, dr * dr + di * di);
  }
  return std::sqrt(best);
}

}  // namespace

const KernelTable kAvx2Table{Backend::Avx2, dot_avx2, gemv_avx2, axpy_avx2, max_abs_diff_avx2};

}  // namespace openq::kernels::detail
