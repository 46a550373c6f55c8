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

// Reference kernels. The complex product is written out as
//   re = xr*ar - xi*ai,  im = xi*ar + xr*ai
// and the SIMD variants evaluate exactly these products in the same order, so
// the elementwise kernels (apply_coin, axpy) agree bitwise across variants.

#include "qwproj/kernel_table.h"

namespace qwproj::kernels {
namespace {

void apply_coin_scalar(const double* matrix, size_t dim, const double* in, double* out,
                       size_t rows) {
  for (size_t r = 0; r < rows; ++r) {
    const double* x = in + 2 * r * dim;
    double* y = out + 2 * r * dim;
    for (size_t i = 0; i < dim; ++i) {
      double acc_re = 0.0;
      double acc_im = 0.0;
      const double* m = matrix + 2 * i * dim;
      for (size_t j = 0; j < dim; ++j) {
        const double mr = m[2 * j];
        const double mi = m[2 * j + 1];
        const double xr = x[2 * j];
        const double xi = x[2 * j + 1];
        acc_re += mr * xr - mi * xi;
        acc_im += mi * xr + mr * xi;
      }
      y[2 * i] = acc_re;
      y[2 * i + 1] = acc_im;
    }
  }
}

void axpy_scalar(double ar, double ai, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i];
    const double xi = x[2 * i + 1];
    y[2 * i] += xr * ar - xi * ai;
    y[2 * i + 1] += xi * ar + xr * ai;
  }
}

double norm_sq_scalar(const double* v, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < 2 * n; ++i) acc += v[i] * v[i];
  return acc;
}

void dot_conj_scalar(const double* a, const double* b, size_t n, double* out) {
  double re = 0.0;
  double im = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i];
    const double ai = a[2 * i + 1];
    const double br = b[2 * i];
    const double bi = b[2 * i + 1];
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  out[0] = re;
  out[1] = im;
}

double diff_norm_sq_scalar(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < 2 * n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

constexpr KernelTable kScalarTable{
    Isa::kScalar,   apply_coin_scalar,  axpy_scalar, norm_sq_scalar,
    dot_conj_scalar, diff_norm_sq_scalar,
};

}  // namespace

const KernelTable* scalar_table() { return &kScalarTable; }

}  // namespace qwproj::kernels
