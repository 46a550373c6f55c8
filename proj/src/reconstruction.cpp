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

#include "qwproj/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "qwproj/error.hpp"
#include "qwproj/kernels.hpp"
#include "qwproj/projection.hpp"

namespace qwproj {
namespace {

constexpr double kGridTolerance = 1e-12;

void require_sigma(const ProjectionMap& pmap) {
  if (!pmap.has_sigma()) throw Error(ErrorCode::kMissingSigma, pmap.name());
}

void check_bounds(SigmaBounds bounds) {
  if (bounds.min > bounds.max) {
    throw Error(ErrorCode::kInvalidParameter, "empty sigma bounds [" + std::to_string(bounds.min) +
                                                  ", " + std::to_string(bounds.max) + "]");
  }
}

void check_grid_size(std::int64_t samples, SigmaBounds bounds) {
  if (samples < bounds.span()) {
    throw Error(ErrorCode::kGridTooCoarse,
                std::to_string(samples) + " phases cannot separate " +
                    std::to_string(bounds.span()) + " sigma values");
  }
}

// Sums terms[lo, hi) into terms[lo].
void pairwise_sum(std::vector<std::vector<Amplitude>>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 1) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  pairwise_sum(terms, lo, mid);
  pairwise_sum(terms, mid, hi);
  kernels::axpy(Amplitude(1.0, 0.0), terms[mid], terms[lo]);
}

}  // namespace

SigmaBounds sigma_support_bounds(const WalkState& state, const ProjectionMap& pmap) {
  require_sigma(pmap);
  if (state.empty()) throw Error(ErrorCode::kInvalidParameter, "empty state has no sigma range");
  SigmaBounds out{std::numeric_limits<std::int64_t>::max(),
                  std::numeric_limits<std::int64_t>::min()};
  for (const PositionKey& x : state.positions()) {
    const std::int64_t s = pmap.sigma(x);
    out.min = std::min(out.min, s);
    out.max = std::max(out.max, s);
  }
  return out;
}

SigmaBounds reachable_sigma_bounds(const ProjectionMap& pmap, const WalkState& psi0,
                                   std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidParameter, "step count must be >= 0");
  SigmaBounds out = sigma_support_bounds(psi0, pmap);
  const auto per_step = pmap.displacement_sigma();
  if (per_step.empty()) return out;
  const auto [lo, hi] = std::minmax_element(per_step.begin(), per_step.end());
  out.min = checked_add(out.min, checked_mul(n, *lo));
  out.max = checked_add(out.max, checked_mul(n, *hi));
  return out;
}

std::int64_t default_grid_size(SigmaBounds bounds) {
  check_bounds(bounds);
  const std::int64_t span = bounds.span();
  return span % 2 == 0 ? span + 1 : span;
}

std::vector<double> phase_grid(std::int64_t samples) {
  if (samples < 1) throw Error(ErrorCode::kInvalidParameter, "grid needs at least one phase");
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (std::int64_t j = 0; j < samples; ++j) {
    out[static_cast<std::size_t>(j)] =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples);
  }
  return out;
}

ReconstructionPlan::ReconstructionPlan(ProjectionMap pmap, SigmaBounds bounds,
                                       std::optional<std::int64_t> samples)
    : pmap_(std::move(pmap)), bounds_(bounds) {
  require_sigma(pmap_);
  check_bounds(bounds_);
  samples_ = samples.value_or(default_grid_size(bounds_));
  if (samples_ < 1) throw Error(ErrorCode::kInvalidParameter, "grid needs at least one phase");
  check_grid_size(samples_, bounds_);
  grid_ = phase_grid(samples_);
}

PhaseFamily project_on_grid(const ReconstructionPlan& plan, const WalkState& source_state) {
  PhaseFamily out;
  out.reserve(plan.grid().size());
  for (double phi : plan.grid()) {
    out.emplace_back(phi, project_state(plan.pmap(), phi, source_state, {.allow_null = true}));
  }
  return out;
}

PhaseFamily evolve_projection_family(const WalkSpec& walk, const ReconstructionPlan& plan,
                                     const WalkState& psi0, std::int64_t n,
                                     PhaseConvention convention) {
  if (n < 0) throw Error(ErrorCode::kInvalidParameter, "step count must be >= 0");
  const ProjectionMap& pmap = plan.pmap();
  std::vector<PositionKey> window;
  if (!walk.coin().is_homogeneous()) window = default_homogeneity_window(walk, pmap, psi0, n);

  std::vector<std::future<WalkState>> tasks;
  tasks.reserve(plan.grid().size());
  for (double phi : plan.grid()) {
    tasks.push_back(std::async(std::launch::async, [&, phi] {
      WalkSpec induced = induced_walk(walk, pmap, phi, window);
      if (convention == PhaseConvention::kCoinAbsorbed) induced = absorb_phase_into_coin(induced);
      return evolve(induced, project_state(pmap, phi, psi0, {.allow_null = true}), n);
    }));
  }
  PhaseFamily out;
  out.reserve(tasks.size());
  for (std::size_t j = 0; j < tasks.size(); ++j) out.emplace_back(plan.grid()[j], tasks[j].get());
  return out;
}

WalkState reconstruct(std::span<const std::pair<double, WalkState>> projections,
                      const ProjectionMap& pmap, SigmaBounds bounds) {
  require_sigma(pmap);
  check_bounds(bounds);
  if (!pmap.can_unproject()) {
    throw Error(ErrorCode::kInvalidParameter, pmap.name() + " cannot map (rho, sigma) back");
  }
  const std::size_t m = projections.size();
  if (m == 0) throw Error(ErrorCode::kInconsistentGrid, "no projections");
  check_grid_size(static_cast<std::int64_t>(m), bounds);

  // Grid index of each projection; every index must appear exactly once.
  const double md = static_cast<double>(m);
  std::vector<std::size_t> index(m);
  std::vector<bool> seen(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const double phi = projections[i].first;
    const double scaled = phi * md / (2.0 * std::numbers::pi);
    const double j = std::round(scaled);
    if (!std::isfinite(phi) || j < 0.0 || j >= md ||
        std::abs(phi - 2.0 * std::numbers::pi * j / md) > kGridTolerance ||
        seen[static_cast<std::size_t>(j)]) {
      throw Error(ErrorCode::kInconsistentGrid,
                  "phase " + std::to_string(phi) + " is not a free point of the " +
                      std::to_string(m) + "-point grid");
    }
    index[i] = static_cast<std::size_t>(j);
    seen[index[i]] = true;
    if (!compatible(*projections[i].second.space(), *pmap.target())) {
      throw Error(ErrorCode::kSpaceMismatch, "projection is not on " + pmap.target()->name());
    }
  }

  std::set<PositionKey> keys;
  for (const auto& [phi, state] : projections) {
    keys.insert(state.positions().begin(), state.positions().end());
  }
  const std::vector<PositionKey> targets(keys.begin(), keys.end());
  const std::size_t d = pmap.source()->coin_dimension();
  const std::size_t width = targets.size() * d;

  // Dense copy of each projection over the common key set.
  std::vector<std::vector<Amplitude>> dense(m, std::vector<Amplitude>(width));
  for (std::size_t i = 0; i < m; ++i) {
    const WalkState& state = projections[i].second;
    for (std::size_t row = 0; row < state.support_size(); ++row) {
      const auto at = std::lower_bound(targets.begin(), targets.end(), state.positions()[row]);
      const auto coin = state.coin(row);
      std::copy(coin.begin(), coin.end(),
                dense[i].begin() + static_cast<std::ptrdiff_t>((at - targets.begin()) * d));
    }
  }

  StateAccumulator acc(pmap.source());
  std::vector<std::vector<Amplitude>> terms(m, std::vector<Amplitude>(width));
  const auto mi = static_cast<std::int64_t>(m);
  for (std::int64_t s = bounds.min; s <= bounds.max; ++s) {
    for (std::size_t i = 0; i < m; ++i) {
      // e^{-i s phi_j} with the angle reduced mod 2 pi exactly in integers.
      const std::int64_t residue = floor_mod(checked_mul(s, static_cast<std::int64_t>(index[i])), mi);
      const Amplitude w =
          std::polar(1.0 / md, -2.0 * std::numbers::pi * static_cast<double>(residue) / md);
      std::fill(terms[i].begin(), terms[i].end(), Amplitude(0.0, 0.0));
      kernels::axpy(w, dense[i], terms[i]);
    }
    pairwise_sum(terms, 0, m);
    for (std::size_t r = 0; r < targets.size(); ++r) {
      const std::optional<PositionKey> x = pmap.unproject(targets[r], s);
      if (!x) continue;
      acc.add(*x, std::span<const Amplitude>(terms[0]).subspan(r * d, d));
    }
  }
  return std::move(acc).finish().pruned(0.0);
}

}  // namespace qwproj
