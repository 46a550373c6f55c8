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

#include "qwproj/walk.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "qwproj/error.hpp"
#include "qwproj/kernels.hpp"

namespace qwproj {

CoinMatrix::CoinMatrix(std::size_t dim, std::vector<Amplitude> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim_ == 0 || entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "coin matrix needs dim*dim entries");
  }
  for (Amplitude z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kNonFinite, "non-finite coin matrix entry");
    }
  }
}

CoinMatrix CoinMatrix::identity(std::size_t dim) {
  std::vector<Amplitude> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return CoinMatrix(dim, std::move(e));
}

CoinMatrix CoinMatrix::diagonal(std::span<const Amplitude> entries) {
  const std::size_t dim = entries.size();
  std::vector<Amplitude> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = entries[i];
  return CoinMatrix(dim, std::move(e));
}

CoinMatrix CoinMatrix::adjoint() const {
  std::vector<Amplitude> e(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) e[j * dim_ + i] = std::conj(entries_[i * dim_ + j]);
  }
  return CoinMatrix(dim_, std::move(e));
}

CoinMatrix operator*(const CoinMatrix& a, const CoinMatrix& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::kDimensionMismatch, "coin product dimensions");
  const std::size_t d = a.dim_;
  std::vector<Amplitude> e(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t j = 0; j < d; ++j) e[i * d + j] += a(i, k) * b(k, j);
    }
  }
  return CoinMatrix(d, std::move(e));
}

double CoinMatrix::unitarity_residual() const {
  const CoinMatrix g = adjoint() * *this;
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double CoinMatrix::max_abs_diff(const CoinMatrix& other) const {
  if (dim_ != other.dim_) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

namespace {

void require_unitary(const CoinMatrix& m, const std::string& where) {
  const double r = m.unitarity_residual();
  if (!(r < kUnitarityTolerance)) {
    throw Error(ErrorCode::kNonUnitary,
                "coin matrix" + where + " has unitarity residual " + std::to_string(r));
  }
}

}  // namespace

CoinAssignment CoinAssignment::homogeneous(CoinMatrix matrix) {
  require_unitary(matrix, "");
  CoinAssignment out;
  out.dim_ = matrix.dim();
  out.uniform_ = std::move(matrix);
  return out;
}

CoinAssignment CoinAssignment::positional(std::size_t dim, Field field) {
  if (!field) throw Error(ErrorCode::kInvalidParameter, "positional coin without a field");
  CoinAssignment out;
  out.dim_ = dim;
  out.field_ = std::move(field);
  return out;
}

CoinMatrix CoinAssignment::at(const PositionKey& x) const {
  if (uniform_) return *uniform_;
  CoinMatrix m = field_(x);
  if (m.dim() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "positional coin dimension at " + x.str());
  }
  require_unitary(m, " at " + x.str());
  return m;
}

const CoinMatrix& CoinAssignment::uniform() const {
  if (!uniform_) throw Error(ErrorCode::kInvalidParameter, "coin is positional");
  return *uniform_;
}

WalkSpec::WalkSpec(SpacePtr space, CoinAssignment coin, std::optional<StepPhase> phase)
    : space_(std::move(space)), coin_(std::move(coin)), phase_(std::move(phase)) {
  if (!space_) throw Error(ErrorCode::kInvalidParameter, "walk without a space");
  const std::size_t d = space_->coin_dimension();
  if (coin_.dimension() != d) {
    throw Error(ErrorCode::kDimensionMismatch,
                "coin dimension " + std::to_string(coin_.dimension()) + " on " + space_->name() +
                    " with " + std::to_string(d) + " displacements");
  }
  step_phases_.assign(d, Amplitude(1.0, 0.0));
  if (phase_) {
    if (phase_->sigma.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "step phase needs one sigma per displacement");
    }
    for (std::size_t c = 0; c < d; ++c) {
      step_phases_[c] = std::polar(1.0, phase_->phi * static_cast<double>(phase_->sigma[c]));
    }
  }
}

namespace {

void require_on_space(const WalkSpec& spec, const WalkState& state) {
  if (!compatible(*spec.space(), *state.space())) {
    throw Error(ErrorCode::kSpaceMismatch,
                "state on " + state.space()->name() + ", walk on " + spec.space()->name());
  }
}

// a * b in the kernels' operation order.
inline Amplitude mul(Amplitude a, Amplitude b) {
  return {b.real() * a.real() - b.imag() * a.imag(), b.imag() * a.real() + b.real() * a.imag()};
}

void require_steps(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidParameter, "step count must be >= 0");
}

}  // namespace

WalkState apply_coin(const WalkSpec& spec, const WalkState& state) {
  require_on_space(spec, state);
  const std::size_t d = state.coin_dimension();
  std::vector<Amplitude> out(state.amplitudes().size());
  if (spec.coin().is_homogeneous()) {
    kernels::apply_coin(spec.coin().uniform().data(), d, state.amplitudes(), out);
  } else {
    for (std::size_t i = 0; i < state.support_size(); ++i) {
      const CoinMatrix m = spec.coin().at(state.positions()[i]);
      kernels::apply_coin(m.data(), d, state.coin(i), std::span(out).subspan(i * d, d));
    }
  }
  return WalkState::from_rows(state.space(), {state.positions().begin(), state.positions().end()},
                              std::move(out));
}

WalkState apply_step(const WalkSpec& spec, const WalkState& state) {
  require_on_space(spec, state);
  const PositionSpace& space = *spec.space();
  const std::size_t d = state.coin_dimension();
  const auto phases = spec.step_phases();
  StateAccumulator acc(state.space());
  acc.reserve(state.support_size() * 2);
  for (std::size_t i = 0; i < state.support_size(); ++i) {
    const PositionKey& x = state.positions()[i];
    const auto coin = state.coin(i);
    for (std::size_t c = 0; c < d; ++c) {
      if (coin[c] == Amplitude{}) continue;
      acc.row(space.displacement(c).forward(x))[c] += mul(phases[c], coin[c]);
    }
  }
  return std::move(acc).finish();
}

WalkState evolve(const WalkSpec& spec, const WalkState& state, std::int64_t n) {
  require_steps(n);
  require_on_space(spec, state);
  WalkState current = state;
  for (std::int64_t t = 0; t < n; ++t) current = apply_step(spec, apply_coin(spec, current));
  return current;
}

std::vector<WalkState> evolve_trajectory(const WalkSpec& spec, const WalkState& state,
                                         std::int64_t n) {
  require_steps(n);
  require_on_space(spec, state);
  std::vector<WalkState> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(state);
  for (std::int64_t t = 0; t < n; ++t) out.push_back(apply_step(spec, apply_coin(spec, out.back())));
  return out;
}

WalkState evolve_recurrence(const WalkSpec& spec, const WalkState& state, std::int64_t n) {
  require_steps(n);
  require_on_space(spec, state);
  const PositionSpace& space = *spec.space();
  const std::size_t d = space.coin_dimension();
  const auto phases = spec.step_phases();
  WalkState current = state;
  for (std::int64_t t = 0; t < n; ++t) {
    std::unordered_set<PositionKey, PositionKeyHash> seen;
    for (const PositionKey& x : current.positions()) {
      for (std::size_t c = 0; c < d; ++c) seen.insert(space.displacement(c).forward(x));
    }
    std::vector<PositionKey> targets(seen.begin(), seen.end());
    std::sort(targets.begin(), targets.end());

    std::vector<std::optional<CoinMatrix>> coins(current.support_size());
    std::vector<Amplitude> next(targets.size() * d);
    for (std::size_t r = 0; r < targets.size(); ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        const auto pre = space.displacement(c).backward(targets[r]);
        if (!pre) continue;
        const auto row = current.find(*pre);
        if (!row) continue;
        if (!coins[*row]) coins[*row] = spec.coin().at(*pre);
        const CoinMatrix& m = *coins[*row];
        const auto alpha = current.coin(*row);
        Amplitude sum{};
        for (std::size_t j = 0; j < d; ++j) sum += m(c, j) * alpha[j];
        next[r * d + c] = phases[c] * sum;
      }
    }
    current = WalkState::from_rows(current.space(), std::move(targets), std::move(next));
  }
  return current;
}

WalkSpec absorb_phase_into_coin(const WalkSpec& spec) {
  if (!spec.phase()) return spec;
  const std::vector<Amplitude> phases(spec.step_phases().begin(), spec.step_phases().end());
  const CoinMatrix diag = CoinMatrix::diagonal(phases);
  if (spec.coin().is_homogeneous()) {
    return WalkSpec(spec.space(), CoinAssignment::homogeneous(diag * spec.coin().uniform()));
  }
  return WalkSpec(spec.space(),
                  CoinAssignment::positional(spec.coin().dimension(),
                                             [diag, coin = spec.coin()](const PositionKey& x) {
                                               return diag * coin.at(x);
                                             }));
}

std::vector<Amplitude> dense_evolution_matrix(const WalkSpec& spec) {
  const PositionSpace& space = *spec.space();
  const auto positions = space.enumerate();
  const std::size_t d = space.coin_dimension();
  const std::size_t dim = positions.size() * d;
  const auto phases = spec.step_phases();
  std::vector<Amplitude> u(dim * dim);
  for (std::size_t p = 0; p < positions.size(); ++p) {
    const CoinMatrix coin = spec.coin().at(positions[p]);
    for (std::size_t c_out = 0; c_out < d; ++c_out) {
      const PositionKey moved = space.displacement(c_out).forward(positions[p]);
      const auto q = static_cast<std::size_t>(
          std::lower_bound(positions.begin(), positions.end(), moved) - positions.begin());
      for (std::size_t c_in = 0; c_in < d; ++c_in) {
        u[(q * d + c_out) * dim + (p * d + c_in)] = phases[c_out] * coin(c_out, c_in);
      }
    }
  }
  return u;
}

std::vector<Amplitude> to_dense(const WalkState& state) {
  const auto positions = state.space()->enumerate();
  const std::size_t d = state.coin_dimension();
  std::vector<Amplitude> v(positions.size() * d);
  for (std::size_t i = 0; i < state.support_size(); ++i) {
    const auto p = static_cast<std::size_t>(
        std::lower_bound(positions.begin(), positions.end(), state.positions()[i]) -
        positions.begin());
    const auto coin = state.coin(i);
    std::copy(coin.begin(), coin.end(), v.begin() + p * d);
  }
  return v;
}

WalkState from_dense(const SpacePtr& space, std::span<const Amplitude> vector) {
  auto positions = space->enumerate();
  if (vector.size() != positions.size() * space->coin_dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "dense vector size does not match space");
  }
  return WalkState::from_rows(space, std::move(positions), {vector.begin(), vector.end()});
}

}  // namespace qwproj
