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

#ifndef QWPROJ_HILBERT_HPP_
#define QWPROJ_HILBERT_HPP_

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qwproj/position.hpp"
#include "qwproj/spaces.hpp"

namespace qwproj {

using Amplitude = std::complex<double>;
using CoinVector = std::vector<Amplitude>;

/// A finitely supported vector of l2(X) (x) C^|Gamma|.
///
/// The support is kept sorted by position, and the coin vectors are stored
/// back to back in one flat buffer (row i occupies amplitudes()[i*d, (i+1)*d)).
/// Zero coin vectors are kept until prune() is called explicitly.
class WalkState {
 public:
  explicit WalkState(SpacePtr space);

  /// Builds a state from (position, coin vector) pairs; duplicate positions
  /// are summed. Throws kDimensionMismatch, kInvalidPosition, kNonFinite.
  static WalkState from_assignments(SpacePtr space,
                                    std::span<const std::pair<PositionKey, CoinVector>> assignments);

  /// Takes already sorted, duplicate-free rows. Throws kInvalidParameter when
  /// the keys are not strictly increasing.
  static WalkState from_rows(SpacePtr space, std::vector<PositionKey> positions,
                             std::vector<Amplitude> amplitudes);

  const SpacePtr& space() const { return space_; }
  std::size_t coin_dimension() const { return dim_; }
  std::size_t support_size() const { return positions_.size(); }
  bool empty() const { return positions_.empty(); }

  std::span<const PositionKey> positions() const { return positions_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<const Amplitude> coin(std::size_t row) const {
    return {amplitudes_.data() + row * dim_, dim_};
  }

  std::optional<std::size_t> find(const PositionKey& x) const;
  /// Coin vector at x; zeros when x is outside the support.
  CoinVector at(const PositionKey& x) const;

  /// Drops rows whose every amplitude has modulus <= eps.
  WalkState pruned(double eps = 0.0) const;

 private:
  SpacePtr space_;
  std::size_t dim_ = 0;
  std::vector<PositionKey> positions_;
  std::vector<Amplitude> amplitudes_;
};

/// Collects weighted coin vectors keyed by position, then emits a WalkState.
/// Rows are summed in insertion order, so the result is deterministic.
class StateAccumulator {
 public:
  explicit StateAccumulator(SpacePtr space);

  void reserve(std::size_t rows);
  /// row(x) += weight * coin
  void add(const PositionKey& x, std::span<const Amplitude> coin, Amplitude weight = 1.0);
  /// Mutable coin row of x, created as zeros on first use.
  std::span<Amplitude> row(const PositionKey& x);

  WalkState finish() &&;

 private:
  SpacePtr space_;
  std::size_t dim_;
  std::unordered_map<PositionKey, std::size_t, PositionKeyHash> index_;
  std::vector<PositionKey> positions_;
  std::vector<Amplitude> amplitudes_;
};

inline WalkState state_new(SpacePtr space,
                           std::span<const std::pair<PositionKey, CoinVector>> assignments) {
  return WalkState::from_assignments(std::move(space), assignments);
}

double norm(const WalkState& state);
/// <a|b>, conjugate-linear in a. Throws kSpaceMismatch.
Amplitude inner(const WalkState& a, const WalkState& b);
/// sum_c |alpha_{x,c}|^2 for each support position.
std::map<PositionKey, double> position_distribution(const WalkState& state);

WalkState scale(Amplitude factor, const WalkState& state);
/// a*x + b*y
WalkState linear_combination(Amplitude a, const WalkState& x, Amplitude b, const WalkState& y);
/// ||a - b||
double distance(const WalkState& a, const WalkState& b);
/// max over all positions and coin indices of |a - b|; missing rows count as
/// zero.
double max_abs_diff(const WalkState& a, const WalkState& b);

}  // namespace qwproj

#endif  // QWPROJ_HILBERT_HPP_
