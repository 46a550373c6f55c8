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

#ifndef QWPROJ_POSITION_HPP_
#define QWPROJ_POSITION_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>

namespace qwproj {

/// A point of a position set: a lattice point, a residue, or an L-lattice
/// embedding point. Coordinates are stored inline; keys of one space always
/// have the same length.
class PositionKey {
 public:
  static constexpr std::size_t kMaxDim = 2;

  constexpr PositionKey() = default;
  constexpr explicit PositionKey(std::int64_t x) : coords_{x, 0}, size_(1) {}
  constexpr PositionKey(std::int64_t x, std::int64_t y) : coords_{x, y}, size_(2) {}
  PositionKey(std::span<const std::int64_t> coords);

  constexpr std::size_t size() const { return size_; }
  constexpr std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return {coords_.data(), size_}; }

  // Lexicographic by coordinates; keys of equal length compare as tuples.
  friend constexpr auto operator<=>(const PositionKey&, const PositionKey&) = default;

  std::string str() const;

 private:
  std::array<std::int64_t, kMaxDim> coords_{};
  std::uint8_t size_ = 0;
};

struct PositionKeyHash {
  std::size_t operator()(const PositionKey& key) const noexcept;
};

// Integer coordinate arithmetic; overflow throws Error(kOverflow).
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Residue in {0, ..., n-1}, also for negative inputs. Requires n >= 1.
std::int64_t floor_mod(std::int64_t value, std::int64_t n);

}  // namespace qwproj

#endif  // QWPROJ_POSITION_HPP_
