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

#ifndef QWPROJ_CATALOG_HPP_
#define QWPROJ_CATALOG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwproj/hilbert.hpp"
#include "qwproj/spaces.hpp"
#include "qwproj/walk.hpp"

namespace qwproj {

/// (1/2)[[-1,1,1,1],[1,-1,1,1],[1,1,-1,1],[1,1,1,-1]] in (R, L, U, D) order.
CoinMatrix grover_coin();
/// (1/sqrt 2)[[1,1],[1,-1]].
CoinMatrix hadamard_coin();

enum class TrapSign { kPlus, kMinus };

/// The normalized four-site Grover eigenstate anchored at (x, y).
WalkState trapped_state(std::int64_t x, std::int64_t y, TrapSign sign);

enum class TrapProjection {
  kLazy,       // rho = x
  kDoubleLine  // rho = x + y
};

/// The projected trapped states written out directly (unnormalized), on the
/// target of lattice_quotient(1, 0) or lattice_quotient(1, 1).
WalkState projected_trapped_state(TrapProjection kind, std::int64_t x, std::int64_t y,
                                  TrapSign sign);

struct ScenarioParams {
  std::int64_t k = 2;         // lattice_to_jumps
  std::int64_t n_circle = 4;  // line_to_circle
  double phi = 0.0;           // line_to_circle
};

struct ScenarioDescriptor {
  std::string name;
  WalkSpec walk;
  std::optional<ProjectionMap> pmap;
  double phi = 0.0;
  // Always holds "default"; trapped states where they apply.
  std::map<std::string, WalkState> states;

  const WalkState& default_state() const { return states.at("default"); }
};

/// grover2d_to_lazy, lattice_to_jumps, line_to_circle, llattice_to_line,
/// lattice_to_doubled.
const std::vector<std::string>& scenario_names();

/// Throws kUnknownScenario and kInvalidParameter.
ScenarioDescriptor scenario(std::string_view name, const ScenarioParams& params = {});

/// Localized at the origin with coin (1, i, -1, -i)/2 or (1, i)/sqrt 2.
WalkState default_initial_state(const SpacePtr& space);

/// Drops the D direction from a 4-coin walk whose coins keep Span{R, L, U}
/// invariant. Throws kInvalidParameter, kSubspaceNotInvariant and
/// kStateOutsideSubspace.
std::pair<WalkSpec, WalkState> restrict_to_three_coin(const WalkSpec& spec, const WalkState& state);

/// Total phase angle picked up by following `label` from `start` around a
/// finite space until the orbit closes.
double twist_phase(const WalkSpec& spec, std::string_view label, const PositionKey& start);

}  // namespace qwproj

#endif  // QWPROJ_CATALOG_HPP_
