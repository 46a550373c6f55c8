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

#include <atomic>
#include <cstdlib>
#include <string>

#include "qwproj/error.hpp"
#include "qwproj/kernels.hpp"

namespace qwproj::kernels {

#ifndef QWPROJ_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#ifndef QWPROJ_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif

namespace {

const KernelTable* compiled(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return scalar_table();
    case Isa::kAvx2:
      return avx2_table();
    case Isa::kNeon:
      return neon_table();
  }
  return nullptr;
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("QWPROJ_ISA")) {
    const std::string name(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
      if (name == to_string(isa) && available(isa)) return compiled(isa);
    }
  }
  return compiled(best_available());
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool available(Isa isa) { return compiled(isa) != nullptr && cpu_supports(isa); }

Isa best_available() {
  if (available(Isa::kAvx2)) return Isa::kAvx2;
  if (available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) {
    throw Error(ErrorCode::kInvalidParameter,
                "kernel variant not available: " + std::string(to_string(isa)));
  }
  return *compiled(isa);
}

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

Isa active_isa() { return active().isa; }

void set_active_isa(Isa isa) { active_slot().store(&table(isa), std::memory_order_relaxed); }

namespace {

const double* raw(std::span<const Complex> v) { return reinterpret_cast<const double*>(v.data()); }
double* raw(std::span<Complex> v) { return reinterpret_cast<double*>(v.data()); }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kDimensionMismatch, what);
}

}  // namespace

void apply_coin(std::span<const Complex> matrix, std::size_t dim, std::span<const Complex> in,
                std::span<Complex> out) {
  require(matrix.size() == dim * dim, "coin matrix size does not match dimension");
  require(dim != 0 && in.size() % dim == 0 && in.size() == out.size(),
          "coin buffer size does not match dimension");
  active().apply_coin(raw(matrix), dim, raw(in), raw(out), in.size() / dim);
}

void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  require(x.size() == y.size(), "axpy length mismatch");
  active().axpy(a.real(), a.imag(), raw(x), raw(y), x.size());
}

double norm_sq(std::span<const Complex> v) { return active().norm_sq(raw(v), v.size()); }

Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b) {
  require(a.size() == b.size(), "dot length mismatch");
  double out[2];
  active().dot_conj(raw(a), raw(b), a.size(), out);
  return {out[0], out[1]};
}

double diff_norm_sq(std::span<const Complex> a, std::span<const Complex> b) {
  require(a.size() == b.size(), "difference length mismatch");
  return active().diff_norm_sq(raw(a), raw(b), a.size());
}

}  // namespace qwproj::kernels
