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

// AVX2 kernels. Compiled with -mavx2 only (no FMA) so products and sums round
// exactly like the scalar reference.

#include <immintrin.h>

#include <array>

#include "qwproj/kernel_table.h"

namespace qwproj::kernels {
namespace {

// (p.re*x.re - p.im*x.im, p.im*x.re + p.re*x.im) for two packed complex p and
// one broadcast complex x.
inline __m256d mul_broadcast(__m256d p, __m256d x_re, __m256d x_im) {
  const __m256d t1 = _mm256_mul_pd(p, x_re);
  const __m256d t2 = _mm256_mul_pd(_mm256_permute_pd(p, 0b0101), x_im);
  return _mm256_addsub_pd(t1, t2);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

constexpr size_t kMaxPackedDim = 16;

void apply_coin_avx2(const double* matrix, size_t dim, const double* in, double* out,
                     size_t rows) {
  if (dim > kMaxPackedDim || dim < 2) {
    scalar_table()->apply_coin(matrix, dim, in, out, rows);
    return;
  }
  // Column-major copy: column j holds m[0][j], m[1][j], ... contiguously so
  // two output rows can be loaded at once.
  alignas(32) std::array<double, 2 * kMaxPackedDim * kMaxPackedDim> cols;
  for (size_t i = 0; i < dim; ++i) {
    for (size_t j = 0; j < dim; ++j) {
      cols[2 * (j * dim + i)] = matrix[2 * (i * dim + j)];
      cols[2 * (j * dim + i) + 1] = matrix[2 * (i * dim + j) + 1];
    }
  }
  const size_t paired = dim & ~size_t{1};
  for (size_t r = 0; r < rows; ++r) {
    const double* x = in + 2 * r * dim;
    double* y = out + 2 * r * dim;
    for (size_t i = 0; i < paired; i += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (size_t j = 0; j < dim; ++j) {
        const __m256d m = _mm256_loadu_pd(&cols[2 * (j * dim + i)]);
        acc = _mm256_add_pd(acc, mul_broadcast(m, _mm256_set1_pd(x[2 * j]),
                                               _mm256_set1_pd(x[2 * j + 1])));
      }
      _mm256_storeu_pd(y + 2 * i, acc);
    }
    if (paired != dim) {
      const size_t i = dim - 1;
      double acc_re = 0.0;
      double acc_im = 0.0;
      for (size_t j = 0; j < dim; ++j) {
        const double mr = matrix[2 * (i * dim + j)];
        const double mi = matrix[2 * (i * dim + j) + 1];
        acc_re += mr * x[2 * j] - mi * x[2 * j + 1];
        acc_im += mi * x[2 * j] + mr * x[2 * j + 1];
      }
      y[2 * i] = acc_re;
      y[2 * i + 1] = acc_im;
    }
  }
}

void axpy_avx2(double ar, double ai, const double* x, double* y, size_t n) {
  const __m256d a_re = _mm256_set1_pd(ar);
  const __m256d a_im = _mm256_set1_pd(ai);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d yv = _mm256_loadu_pd(y + 2 * i);
    _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(yv, mul_broadcast(xv, a_re, a_im)));
  }
  for (; i < n; ++i) {
    const double xr = x[2 * i];
    const double xi = x[2 * i + 1];
    y[2 * i] += xr * ar - xi * ai;
    y[2 * i + 1] += xi * ar + xr * ai;
  }
}

double norm_sq_avx2(const double* v, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d a = _mm256_loadu_pd(v + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(a, a));
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += v[2 * i] * v[2 * i] + v[2 * i + 1] * v[2 * i + 1];
  return total;
}

void dot_conj_avx2(const double* a, const double* b, size_t n, double* out) {
  // Lanes (re, im, re, im): re += ar*br + ai*bi, im += ar*bi - ai*br.
  __m256d acc_direct = _mm256_setzero_pd();   // (ar*br, ai*bi, ...)
  __m256d acc_swapped = _mm256_setzero_pd();  // (ar*bi, ai*br, ...)
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(a + 2 * i);
    const __m256d bv = _mm256_loadu_pd(b + 2 * i);
    acc_direct = _mm256_add_pd(acc_direct, _mm256_mul_pd(av, bv));
    acc_swapped = _mm256_add_pd(acc_swapped, _mm256_mul_pd(av, _mm256_permute_pd(bv, 0b0101)));
  }
  alignas(32) double d[4];
  alignas(32) double s[4];
  _mm256_store_pd(d, acc_direct);
  _mm256_store_pd(s, acc_swapped);
  double re = (d[0] + d[1]) + (d[2] + d[3]);
  double im = (s[0] - s[1]) + (s[2] - s[3]);
  for (; i < n; ++i) {
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

double diff_norm_sq_avx2(const double* a, const double* b, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + 2 * i), _mm256_loadu_pd(b + 2 * i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    const double dr = a[2 * i] - b[2 * i];
    const double di = a[2 * i + 1] - b[2 * i + 1];
    total += dr * dr + di * di;
  }
  return total;
}

constexpr KernelTable kAvx2Table{
    Isa::kAvx2,    apply_coin_avx2,  axpy_avx2, norm_sq_avx2,
    dot_conj_avx2, diff_norm_sq_avx2,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2Table; }

}  // namespace qwproj::kernels
