// Copyright 2026 The qwproj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// NEON (AArch64) kernels: one complex per float64x2_t. Build with
// -ffp-contract=off so the multiply/add pairs are not fused and rounding
// matches the scalar reference.

#include <arm_neon.h>

#include "qwproj/kernel_table.h"

namespace qwproj::kernels {
namespace {

// (p.re*x.re - p.im*x.im, p.im*x.re + p.re*x.im)
inline float64x2_t cmul(float64x2_t p, double x_re, double x_im) {
  static const double kSign[2] = {-1.0, 1.0};
  const float64x2_t t1 = vmulq_n_f64(p, x_re);
  const float64x2_t t2 = vmulq_n_f64(vextq_f64(p, p, 1), x_im);
  return vaddq_f64(t1, vmulq_f64(t2, vld1q_f64(kSign)));
}

void apply_coin_neon(const double* matrix, size_t dim, const double* in, double* out,
                     size_t rows) {
  for (size_t r = 0; r < rows; ++r) {
    const double* x = in + 2 * r * dim;
    double* y = out + 2 * r * dim;
    for (size_t i = 0; i < dim; ++i) {
      float64x2_t acc = vdupq_n_f64(0.0);
      for (size_t j = 0; j < dim; ++j) {
        const float64x2_t m = vld1q_f64(matrix + 2 * (i * dim + j));
        acc = vaddq_f64(acc, cmul(m, x[2 * j], x[2 * j + 1]));
      }
      vst1q_f64(y + 2 * i, acc);
    }
  }
}

void axpy_neon(double ar, double ai, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    // cmul(x, a) evaluates x.re*a.re - x.im*a.im, x.im*a.re + x.re*a.im.
    const float64x2_t prod = cmul(vld1q_f64(x + 2 * i), ar, ai);
    vst1q_f64(y + 2 * i, vaddq_f64(vld1q_f64(y + 2 * i), prod));
  }
}

double norm_sq_neon(const double* v, size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (size_t i = 0; i < n; ++i) {
    const float64x2_t a = vld1q_f64(v + 2 * i);
    acc = vaddq_f64(acc, vmulq_f64(a, a));
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

void dot_conj_neon(const double* a, const double* b, size_t n, double* out) {
  float64x2_t direct = vdupq_n_f64(0.0);
  float64x2_t swapped = vdupq_n_f64(0.0);
  for (size_t i = 0; i < n; ++i) {
    const float64x2_t av = vld1q_f64(a + 2 * i);
    const float64x2_t bv = vld1q_f64(b + 2 * i);
    direct = vaddq_f64(direct, vmulq_f64(av, bv));
    swapped = vaddq_f64(swapped, vmulq_f64(av, vextq_f64(bv, bv, 1)));
  }
  out[0] = vgetq_lane_f64(direct, 0) + vgetq_lane_f64(direct, 1);
  out[1] = vgetq_lane_f64(swapped, 0) - vgetq_lane_f64(swapped, 1);
}

double diff_norm_sq_neon(const double* a, const double* b, size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (size_t i = 0; i < n; ++i) {
    const float64x2_t d = vsubq_f64(vld1q_f64(a + 2 * i), vld1q_f64(b + 2 * i));
    acc = vaddq_f64(acc, vmulq_f64(d, d));
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

constexpr KernelTable kNeonTable{
    Isa::kNeon,    apply_coin_neon,  axpy_neon, norm_sq_neon,
    dot_conj_neon, diff_norm_sq_neon,
};

}  // namespace

const KernelTable* neon_table() { return &kNeonTable; }

}  // namespace qwproj::kernels
