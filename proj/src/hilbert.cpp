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

#include "qwproj/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qwproj/error.hpp"
#include "qwproj/kernels.hpp"

namespace qwproj {
namespace {

void require_compatible(const WalkState& a, const WalkState& b) {
  if (!compatible(*a.space(), *b.space()) || a.coin_dimension() != b.coin_dimension()) {
    throw Error(ErrorCode::kSpaceMismatch,
                "states live on " + a.space()->name() + " and " + b.space()->name());
  }
}

bool finite(Amplitude z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Calls on_both(i, j), on_left(i) or on_right(j) while merging the sorted
// supports of a and b.
template <class Both, class Left, class Right>
void merge_supports(const WalkState& a, const WalkState& b, Both on_both, Left on_left,
                    Right on_right) {
  const auto pa = a.positions();
  const auto pb = b.positions();
  std::size_t i = 0, j = 0;
  while (i < pa.size() || j < pb.size()) {
    if (j == pb.size() || (i < pa.size() && pa[i] < pb[j])) {
      on_left(i++);
    } else if (i == pa.size() || pb[j] < pa[i]) {
      on_right(j++);
    } else {
      on_both(i++, j++);
    }
  }
}

}  // namespace

WalkState::WalkState(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw Error(ErrorCode::kInvalidParameter, "state without a space");
  dim_ = space_->coin_dimension();
}

WalkState WalkState::from_assignments(
    SpacePtr space, std::span<const std::pair<PositionKey, CoinVector>> assignments) {
  StateAccumulator acc(space);
  acc.reserve(assignments.size());
  for (const auto& [x, coin] : assignments) {
    if (coin.size() != space->coin_dimension()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "coin vector of length " + std::to_string(coin.size()) + " on " +
                      space->name() + " (coin dimension " +
                      std::to_string(space->coin_dimension()) + ")");
    }
    if (!space->contains(x)) {
      throw Error(ErrorCode::kInvalidPosition, x.str() + " is not in " + space->name());
    }
    if (!std::all_of(coin.begin(), coin.end(), finite)) {
      throw Error(ErrorCode::kNonFinite, "non-finite amplitude at " + x.str());
    }
    acc.add(x, coin);
  }
  return std::move(acc).finish();
}

WalkState WalkState::from_rows(SpacePtr space, std::vector<PositionKey> positions,
                               std::vector<Amplitude> amplitudes) {
  WalkState state(std::move(space));
  if (amplitudes.size() != positions.size() * state.dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "amplitude buffer does not match support");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i > 0 && !(positions[i - 1] < positions[i])) {
      throw Error(ErrorCode::kInvalidParameter, "rows are not strictly increasing");
    }
    if (!state.space_->contains(positions[i])) {
      throw Error(ErrorCode::kInvalidPosition,
                  positions[i].str() + " is not in " + state.space_->name());
    }
  }
  if (!std::all_of(amplitudes.begin(), amplitudes.end(), finite)) {
    throw Error(ErrorCode::kNonFinite, "non-finite amplitude");
  }
  state.positions_ = std::move(positions);
  state.amplitudes_ = std::move(amplitudes);
  return state;
}

std::optional<std::size_t> WalkState::find(const PositionKey& x) const {
  const auto it = std::lower_bound(positions_.begin(), positions_.end(), x);
  if (it == positions_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - positions_.begin());
}

CoinVector WalkState::at(const PositionKey& x) const {
  const auto row = find(x);
  if (!row) return CoinVector(dim_, Amplitude{});
  const auto c = coin(*row);
  return CoinVector(c.begin(), c.end());
}

WalkState WalkState::pruned(double eps) const {
  WalkState out(space_);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    const auto c = coin(i);
    if (std::any_of(c.begin(), c.end(), [eps](Amplitude z) { return std::abs(z) > eps; })) {
      out.positions_.push_back(positions_[i]);
      out.amplitudes_.insert(out.amplitudes_.end(), c.begin(), c.end());
    }
  }
  return out;
}

StateAccumulator::StateAccumulator(SpacePtr space)
    : space_(std::move(space)), dim_(space_->coin_dimension()) {}

void StateAccumulator::reserve(std::size_t rows) {
  index_.reserve(rows);
  positions_.reserve(rows);
  amplitudes_.reserve(rows * dim_);
}

std::span<Amplitude> StateAccumulator::row(const PositionKey& x) {
  const auto [it, inserted] = index_.try_emplace(x, positions_.size());
  if (inserted) {
    positions_.push_back(x);
    amplitudes_.resize(amplitudes_.size() + dim_);
  }
  return {amplitudes_.data() + it->second * dim_, dim_};
}

void StateAccumulator::add(const PositionKey& x, std::span<const Amplitude> coin,
                           Amplitude weight) {
  if (coin.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "coin length mismatch");
  kernels::axpy(weight, coin, row(x));
}

WalkState StateAccumulator::finish() && {
  std::vector<std::size_t> order(positions_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [this](std::size_t a, std::size_t b) { return positions_[a] < positions_[b]; });
  std::vector<PositionKey> positions;
  std::vector<Amplitude> amplitudes;
  positions.reserve(order.size());
  amplitudes.reserve(amplitudes_.size());
  for (std::size_t i : order) {
    positions.push_back(positions_[i]);
    amplitudes.insert(amplitudes.end(), amplitudes_.begin() + i * dim_,
                      amplitudes_.begin() + (i + 1) * dim_);
  }
  return WalkState::from_rows(space_, std::move(positions), std::move(amplitudes));
}

double norm(const WalkState& state) { return std::sqrt(kernels::norm_sq(state.amplitudes())); }

Amplitude inner(const WalkState& a, const WalkState& b) {
  require_compatible(a, b);
  Amplitude total{};
  merge_supports(
      a, b, [&](std::size_t i, std::size_t j) { total += kernels::dot_conj(a.coin(i), b.coin(j)); },
      [](std::size_t) {}, [](std::size_t) {});
  return total;
}

std::map<PositionKey, double> position_distribution(const WalkState& state) {
  std::map<PositionKey, double> out;
  for (std::size_t i = 0; i < state.support_size(); ++i) {
    out.emplace_hint(out.end(), state.positions()[i], kernels::norm_sq(state.coin(i)));
  }
  return out;
}

WalkState scale(Amplitude factor, const WalkState& state) {
  std::vector<Amplitude> amps(state.amplitudes().size());
  kernels::axpy(factor, state.amplitudes(), amps);
  return WalkState::from_rows(state.space(),
                              {state.positions().begin(), state.positions().end()},
                              std::move(amps));
}

WalkState linear_combination(Amplitude a, const WalkState& x, Amplitude b, const WalkState& y) {
  require_compatible(x, y);
  const std::size_t d = x.coin_dimension();
  std::vector<PositionKey> positions;
  std::vector<Amplitude> amps;
  auto append = [&](const PositionKey& key) {
    positions.push_back(key);
    amps.resize(amps.size() + d);
    return std::span<Amplitude>(amps.data() + amps.size() - d, d);
  };
  merge_supports(
      x, y,
      [&](std::size_t i, std::size_t j) {
        auto out = append(x.positions()[i]);
        kernels::axpy(a, x.coin(i), out);
        kernels::axpy(b, y.coin(j), out);
      },
      [&](std::size_t i) { kernels::axpy(a, x.coin(i), append(x.positions()[i])); },
      [&](std::size_t j) { kernels::axpy(b, y.coin(j), append(y.positions()[j])); });
  return WalkState::from_rows(x.space(), std::move(positions), std::move(amps));
}

double distance(const WalkState& a, const WalkState& b) {
  require_compatible(a, b);
  double total = 0.0;
  merge_supports(
      a, b,
      [&](std::size_t i, std::size_t j) { total += kernels::diff_norm_sq(a.coin(i), b.coin(j)); },
      [&](std::size_t i) { total += kernels::norm_sq(a.coin(i)); },
      [&](std::size_t j) { total += kernels::norm_sq(b.coin(j)); });
  return std::sqrt(total);
}

double max_abs_diff(const WalkState& a, const WalkState& b) {
  require_compatible(a, b);
  double worst = 0.0;
  auto one_sided = [&worst](std::span<const Amplitude> c) {
    for (Amplitude z : c) worst = std::max(worst, std::abs(z));
  };
  merge_supports(
      a, b,
      [&](std::size_t i, std::size_t j) {
        const auto ca = a.coin(i);
        const auto cb = b.coin(j);
        for (std::size_t c = 0; c < ca.size(); ++c) worst = std::max(worst, std::abs(ca[c] - cb[c]));
      },
      [&](std::size_t i) { one_sided(a.coin(i)); }, [&](std::size_t j) { one_sided(b.coin(j)); });
  return worst;
}

}  // namespace qwproj
