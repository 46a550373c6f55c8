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

#include "qwproj/projection.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <unordered_set>

#include "qwproj/error.hpp"

namespace qwproj {
namespace {

void require_source(const ProjectionMap& pmap, const PositionSpace& space) {
  if (!compatible(*pmap.source(), space)) {
    throw Error(ErrorCode::kSpaceMismatch,
                "projection " + pmap.name() + " expects " + pmap.source()->name() + ", got " +
                    space.name());
  }
}

}  // namespace

WalkState project_state(const ProjectionMap& pmap, double phi, const WalkState& state,
                        ProjectOptions options) {
  require_source(pmap, *state.space());
  const bool phased = phi != 0.0;
  if (phased && !pmap.has_sigma()) {
    throw Error(ErrorCode::kMissingSigma, "phase projection through " + pmap.name());
  }
  StateAccumulator acc(pmap.target());
  acc.reserve(state.support_size());
  for (std::size_t i = 0; i < state.support_size(); ++i) {
    const PositionKey& x = state.positions()[i];
    const Amplitude weight =
        phased ? std::polar(1.0, phi * static_cast<double>(pmap.sigma(x))) : Amplitude(1.0, 0.0);
    acc.add(pmap.rho(x), state.coin(i), weight);
  }
  WalkState out = std::move(acc).finish();
  const double n = norm(out);
  if (!(n >= kNullProjectionThreshold)) {
    if (options.allow_null) return out;
    throw Error(ErrorCode::kNullProjection,
                "projection through " + pmap.name() + " has norm " + std::to_string(n));
  }
  return options.normalize ? scale(1.0 / n, out) : out;
}

HomogeneityReport check_coin_homogeneity(const WalkSpec& walk, const ProjectionMap& pmap,
                                         std::span<const PositionKey> window) {
  require_source(pmap, *walk.space());
  std::map<PositionKey, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < window.size(); ++i) classes[pmap.rho(window[i])].push_back(i);

  HomogeneityReport report;
  for (const auto& [image, members] : classes) {
    std::vector<CoinMatrix> coins;
    coins.reserve(members.size());
    for (std::size_t i : members) coins.push_back(walk.coin().at(window[i]));
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        ++report.pairs_checked;
        if (!(coins[a].max_abs_diff(coins[b]) <= kHomogeneityTolerance)) {
          report.passed = false;
          report.witness = std::pair(window[members[a]], window[members[b]]);
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<PositionKey> reachable_window(const WalkSpec& walk, const WalkState& state,
                                          std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::kInvalidParameter, "step count must be >= 0");
  const PositionSpace& space = *walk.space();
  std::unordered_set<PositionKey, PositionKeyHash> seen(state.positions().begin(),
                                                        state.positions().end());
  std::vector<PositionKey> frontier(state.positions().begin(), state.positions().end());
  for (std::int64_t t = 0; t < n && !frontier.empty(); ++t) {
    std::vector<PositionKey> next;
    for (const PositionKey& x : frontier) {
      for (const Displacement& c : space.displacements()) {
        PositionKey y = c.forward(x);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  std::vector<PositionKey> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PositionKey> default_homogeneity_window(const WalkSpec& walk, const ProjectionMap& pmap,
                                                    const WalkState& psi0, std::int64_t n) {
  std::vector<PositionKey> out = reachable_window(walk, psi0, n);
  if (pmap.has_lift()) {
    const std::size_t reached = out.size();
    for (std::size_t i = 0; i < reached; ++i) out.push_back(pmap.lift(pmap.rho(out[i])));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WalkSpec induced_walk(const WalkSpec& walk, const ProjectionMap& pmap, double phi,
                      std::span<const PositionKey> window) {
  require_source(pmap, *walk.space());
  if (!pmap.has_lift()) {
    throw Error(ErrorCode::kInvalidParameter,
                "projection " + pmap.name() + " has no lift; induced displacements unknown");
  }
  if (walk.phase()) {
    throw Error(ErrorCode::kInvalidParameter, "projecting a walk that already carries phases");
  }
  std::optional<StepPhase> phase;
  if (phi != 0.0) {
    const auto sigma = pmap.displacement_sigma();
    phase = StepPhase{phi, {sigma.begin(), sigma.end()}};
  }
  if (walk.coin().is_homogeneous()) {
    return WalkSpec(pmap.target(), walk.coin(), std::move(phase));
  }
  if (window.empty()) {
    throw Error(ErrorCode::kInvalidParameter,
                "a homogeneity window is required to project a positional coin");
  }
  const HomogeneityReport report = check_coin_homogeneity(walk, pmap, window);
  if (!report.passed) {
    throw Error(ErrorCode::kInhomogeneousCoin,
                "coin differs at " + report.witness->first.str() + " and " +
                    report.witness->second.str() + ", both in class " +
                    pmap.rho(report.witness->first).str());
  }
  CoinAssignment coin = CoinAssignment::positional(
      walk.coin().dimension(),
      [coin = walk.coin(), pmap](const PositionKey& x) { return coin.at(pmap.lift(x)); });
  return WalkSpec(pmap.target(), std::move(coin), std::move(phase));
}

CommutationReport verify_commutation(const WalkSpec& walk, const ProjectionMap& pmap, double phi,
                                     const WalkState& psi0, std::int64_t n, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidParameter, "tolerance must be > 0");
  if (n < 0) throw Error(ErrorCode::kInvalidParameter, "step count must be >= 0");
  const WalkState projected0 = project_state(pmap, phi, psi0);
  std::vector<PositionKey> window;
  if (!walk.coin().is_homogeneous()) window = default_homogeneity_window(walk, pmap, psi0, n);
  const WalkSpec induced = induced_walk(walk, pmap, phi, window);

  auto parent = std::async(std::launch::async, [&] {
    std::vector<WalkState> out;
    for (const WalkState& s : evolve_trajectory(walk, psi0, n)) {
      out.push_back(project_state(pmap, phi, s, {.allow_null = true}));
    }
    return out;
  });
  const std::vector<WalkState> projected = evolve_trajectory(induced, projected0, n);
  const std::vector<WalkState> lifted = parent.get();

  CommutationReport report;
  report.steps = n;
  report.tolerance = tol;
  for (std::size_t t = 0; t < projected.size(); ++t) {
    const double r = distance(lifted[t], projected[t]);
    report.residuals.push_back(r);
    report.max_residual = std::max(report.max_residual, r);
  }
  report.passed = report.max_residual < tol;
  return report;
}

IntertwiningResiduals intertwining_residuals(const WalkSpec& walk, const WalkSpec& induced,
                                             const ProjectionMap& pmap, double phi,
                                             const WalkState& psi) {
  const ProjectOptions keep{.allow_null = true};
  const WalkState projected = project_state(pmap, phi, psi, keep);
  IntertwiningResiduals out;
  out.step = distance(project_state(pmap, phi, apply_step(walk, psi), keep),
                      apply_step(induced, projected));
  out.coin = distance(project_state(pmap, phi, apply_coin(walk, psi), keep),
                      apply_coin(induced, projected));
  out.full = distance(project_state(pmap, phi, evolve(walk, psi, 1), keep),
                      evolve(induced, projected, 1));
  return out;
}

}  // namespace qwproj
