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

#ifndef QWPROJ_PROJECTION_HPP_
#define QWPROJ_PROJECTION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qwproj/hilbert.hpp"
#include "qwproj/spaces.hpp"
#include "qwproj/walk.hpp"

namespace qwproj {

/// Projected states with norm below this are the zero vector.
inline constexpr double kNullProjectionThreshold = 1e-12;
/// Coin matrices within one class must agree to this (max-norm).
inline constexpr double kHomogeneityTolerance = 1e-12;

struct ProjectOptions {
  bool normalize = false;
  // Return a (near-)zero result instead of throwing kNullProjection.
  bool allow_null = false;
};

/// $_phi: |x>|c> -> e^{i phi sigma(x)} |rho(x)>|c>, summing coinciding images.
/// phi = 0 is the plain $ and needs no sigma.
///
/// Only finitely supported states exist in this library, so the sum over a
/// class is always finite; the l2-but-not-l1 inputs on which $ is undefined
/// cannot be represented.
///
/// Throws kMissingSigma (phi != 0 without sigma), kSpaceMismatch and
/// kNullProjection.
WalkState project_state(const ProjectionMap& pmap, double phi, const WalkState& state,
                        ProjectOptions options = {});

struct HomogeneityReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<PositionKey, PositionKey>> witness;
};

/// C_x == C_y (within kHomogeneityTolerance) for every pair of window points
/// with rho(x) == rho(y).
HomogeneityReport check_coin_homogeneity(const WalkSpec& walk, const ProjectionMap& pmap,
                                         std::span<const PositionKey> window);

/// Every position reachable from the support of `state` in at most n steps.
std::vector<PositionKey> reachable_window(const WalkSpec& walk, const WalkState& state,
                                          std::int64_t n);

/// The positions that matter for an n-step run from psi0: the reachable set
/// plus the lift of every class it meets (the lift is the representative the
/// induced coin is read from).
std::vector<PositionKey> default_homogeneity_window(const WalkSpec& walk, const ProjectionMap& pmap,
                                                    const WalkState& psi0, std::int64_t n);

/// The walk on pmap.target() intertwined with `walk` by $_phi: induced
/// displacements, C'_{rho(x)} = C_x, and step phases e^{i phi sigma(c)} when
/// phi != 0. Positional coins are checked on `window` (required for them).
///
/// Throws kInhomogeneousCoin, kMissingSigma, kSpaceMismatch, kInvalidParameter.
WalkSpec induced_walk(const WalkSpec& walk, const ProjectionMap& pmap, double phi,
                      std::span<const PositionKey> window = {});

struct CommutationReport {
  std::int64_t steps = 0;
  std::vector<double> residuals;  // t = 0, ..., steps
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Compares $_phi (SC)^t psi0 with (S'C')^t $_phi psi0 for t = 0..n. The two
/// branches are evolved concurrently.
CommutationReport verify_commutation(const WalkSpec& walk, const ProjectionMap& pmap, double phi,
                                     const WalkState& psi0, std::int64_t n, double tol);

struct IntertwiningResiduals {
  double step = 0.0;  // ||$ S psi - S' $ psi||
  double coin = 0.0;  // ||$ C psi - C' $ psi||
  double full = 0.0;  // ||$ SC psi - S'C' $ psi||
};

IntertwiningResiduals intertwining_residuals(const WalkSpec& walk, const WalkSpec& induced,
                                             const ProjectionMap& pmap, double phi,
                                             const WalkState& psi);

}  // namespace qwproj

#endif  // QWPROJ_PROJECTION_HPP_
