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

#ifndef QWPROJ_KERNELS_HPP_
#define QWPROJ_KERNELS_HPP_

#include <complex>
#include <span>
#include <string_view>

#include "qwproj/kernel_table.h"

namespace qwproj::kernels {

using Complex = std::complex<double>;

std::string_view to_string(Isa isa) noexcept;

/// True when the variant is compiled in and the running CPU supports it.
bool available(Isa isa);
Isa best_available();

/// Throws Error(kInvalidParameter) for an unavailable variant.
const KernelTable& table(Isa isa);

/// The process-wide selection. Starts at QWPROJ_ISA (scalar|avx2|neon) when
/// set and available, otherwise at best_available().
const KernelTable& active();
Isa active_isa();
void set_active_isa(Isa isa);

// Span wrappers over active().

void apply_coin(std::span<const Complex> matrix, std::size_t dim, std::span<const Complex> in,
                std::span<Complex> out);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);
double norm_sq(std::span<const Complex> v);
Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b);
double diff_norm_sq(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace qwproj::kernels

#endif  // QWPROJ_KERNELS_HPP_
