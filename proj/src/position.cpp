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

#include "qwproj/position.hpp"

#include "qwproj/error.hpp"

namespace qwproj {

PositionKey::PositionKey(std::span<const std::int64_t> coords) {
  if (coords.size() > kMaxDim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "position has " + std::to_string(coords.size()) + " coordinates");
  }
  for (std::size_t i = 0; i < coords.size(); ++i) coords_[i] = coords[i];
  size_ = static_cast<std::uint8_t>(coords.size());
}

std::string PositionKey::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) out += ",";
    out += std::to_string(coords_[i]);
  }
  return out + ")";
}

std::size_t PositionKeyHash::operator()(const PositionKey& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ key.size();
  for (std::int64_t c : key.coords()) {
    h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow,
                "coordinate overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow,
                "coordinate overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

std::int64_t floor_mod(std::int64_t value, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidModulus, "modulus must be >= 1");
  const std::int64_t r = value % n;
  return r < 0 ? r + n : r;
}

}  // namespace qwproj
