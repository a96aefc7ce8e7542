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

// NEON is part of the aarch64 baseline, no runtime check needed.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "tables.hpp"

namespace openq::kernels::detail {
namespace {

// One complex double per register, [re, im].

inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }

cplx dot_neon(std::span<const cplx> a, std::span<const cplx> b) {
  float64x2_t acc_re = vdupq_n_f64(0.0), acc_im = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const float64x2_t va = load1(a.data() + i);
    const float64x2_t vb = load1(b.data() + i);
    acc_re = vfmaq_laneq_f64(acc_re, va, vb, 0);                  // [ar*br, ai*br]
    acc_im = vfmaq_laneq_f64(acc_im, vextq_f64(va, va, 1), vb, 1);  // [ai*bi, ar*bi]
  }
  return {vgetq_lane_f64(acc_re, 0) - vgetq_lane_f64(acc_im, 0),
          vgetq_lane_f64(acc_re, 1) + vgetq_lane_f64(acc_im, 1)};
}

void gemv_neon(std::span<const cplx> A, std::size_t rows, std::size_t cols,
               std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = dot_neon(A.subspan(r * cols, cols), x);
  }
}

void axpy_neon(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const float64x2_t sign = {-1.0, 1.0};
  const float64x2_t aim = vmulq_n_f64(sign, alpha.imag());
  double* py = reinterpret_cast<double*>(y.data());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const float64x2_t vx = load1(x.data() + i);
    float64x2_t vy = vld1q_f64(py + 2 * i);
    vy = vfmaq_n_f64(vy, vx, alpha.real());
    vy = vfmaq_f64(vy, vextq_f64(vx, vx, 1), aim);
    vst1q_f64(py + 2 * i, vy);
  }
}

double max_abs_diff_neon(std::span<const cplx> a, std::span<const cplx> b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const float64x2_t d = vsubq_f64(load1(a.data() + i), load1(b.data() + i));
    best = std::max(best, vaddvq_f64(vmulq_f64(d, d)));
  }
  return std::sqrt(best);
}

}  // namespace

const KernelTable kNeonTable{Backend::Neon, dot_neon, gemv_neon, axpy_neon, max_abs_diff_neon};

}  // namespace openq::kernels::detail
