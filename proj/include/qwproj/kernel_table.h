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

#ifndef QWPROJ_KERNEL_TABLE_H_
#define QWPROJ_KERNEL_TABLE_H_

// Only <stddef.h> here: the NEON translation unit includes this header and is
// kept free of hosted-library dependencies.
#include <stddef.h>

namespace qwproj::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

// Complex buffers are interleaved (re, im) doubles; every count is in complex
// elements. This is the layout of std::complex<double> arrays.
struct KernelTable {
  Isa isa;
  // out[r] = matrix * in[r] for each of `rows` rows of length `dim`.
  // `matrix` is dim x dim, row-major. `in` and `out` must not alias.
  void (*apply_coin)(const double* matrix, size_t dim, const double* in, double* out,
                     size_t rows);
  // y += a * x
  void (*axpy)(double a_re, double a_im, const double* x, double* y, size_t n);
  // sum |v_i|^2
  double (*norm_sq)(const double* v, size_t n);
  // sum conj(a_i) * b_i, written to out[0..1]
  void (*dot_conj)(const double* a, const double* b, size_t n, double* out);
  // sum |a_i - b_i|^2
  double (*diff_norm_sq)(const double* a, const double* b, size_t n);
};

// Each returns nullptr when the variant is not compiled in.
const KernelTable* scalar_table();
const KernelTable* avx2_table();
const KernelTable* neon_table();

}  // namespace qwproj::kernels

#endif  // QWPROJ_KERNEL_TABLE_H_
