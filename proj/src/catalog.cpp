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

#include "qwproj/catalog.hpp"

#include <cmath>
#include <numbers>

#include "qwproj/error.hpp"
#include "qwproj/projection.hpp"

namespace qwproj {
namespace {

constexpr double kSubspaceTolerance = 1e-12;

enum Dir : std::size_t { kR = 0, kL = 1, kU = 2, kD = 3 };

CoinVector basis_sum(std::initializer_list<std::pair<Dir, double>> terms) {
  CoinVector v(4);
  for (const auto& [dir, coeff] : terms) v[dir] += coeff;
  return v;
}

void check_pmap(const ProjectionMap& pmap) {
  const auto window = box_window(-3, 3, pmap.source()->dimension());
  const ConsistencyReport report = check_rho_consistency(pmap, window);
  if (!report.passed) {
    throw Error(ErrorCode::kInvalidParameter,
                pmap.name() + " is inconsistent at " + report.counterexample->x.str() + ", " +
                    report.counterexample->y.str());
  }
}

ScenarioDescriptor grover_scenario(std::string name, ProjectionMap pmap, bool with_traps) {
  SpacePtr z2 = pmap.source();
  ScenarioDescriptor d{std::move(name), WalkSpec(z2, CoinAssignment::homogeneous(grover_coin())),
                       std::move(pmap), 0.0, {}};
  d.states.emplace("default", default_initial_state(z2));
  if (with_traps) {
    d.states.emplace("trapped+", trapped_state(0, 0, TrapSign::kPlus));
    d.states.emplace("trapped-", trapped_state(0, 0, TrapSign::kMinus));
  }
  return d;
}

}  // namespace

CoinMatrix grover_coin() {
  std::vector<Amplitude> m(16, 0.5);
  for (std::size_t i = 0; i < 4; ++i) m[i * 4 + i] = -0.5;
  return CoinMatrix(4, std::move(m));
}

CoinMatrix hadamard_coin() {
  const double h = 1.0 / std::numbers::sqrt2;
  return CoinMatrix(2, {h, h, h, -h});
}

WalkState trapped_state(std::int64_t x, std::int64_t y, TrapSign sign) {
  const double s = sign == TrapSign::kPlus ? 1.0 : -1.0;
  const double p = 1.0 / (2.0 * std::numbers::sqrt2);
  const std::vector<std::pair<PositionKey, CoinVector>> rows = {
      {PositionKey(x, y), basis_sum({{kL, p}, {kD, p}})},
      {PositionKey(x, checked_add(y, 1)), basis_sum({{kL, s * p}, {kU, s * p}})},
      {PositionKey(checked_add(x, 1), y), basis_sum({{kR, s * p}, {kD, s * p}})},
      {PositionKey(checked_add(x, 1), checked_add(y, 1)), basis_sum({{kR, p}, {kU, p}})},
  };
  return WalkState::from_assignments(make_lattice(2), rows);
}

WalkState projected_trapped_state(TrapProjection kind, std::int64_t x, std::int64_t y,
                                  TrapSign sign) {
  const double s = sign == TrapSign::kPlus ? 1.0 : -1.0;
  const double p = 1.0 / (2.0 * std::numbers::sqrt2);
  if (kind == TrapProjection::kLazy) {
    const std::vector<std::pair<PositionKey, CoinVector>> rows = {
        {PositionKey(x), basis_sum({{kL, (1.0 + s) * p}, {kD, p}, {kU, s * p}})},
        {PositionKey(checked_add(x, 1)), basis_sum({{kR, (1.0 + s) * p}, {kU, p}, {kD, s * p}})},
    };
    return WalkState::from_assignments(lattice_quotient(1, 0).target(), rows);
  }
  const std::int64_t r = checked_add(x, y);
  const std::vector<std::pair<PositionKey, CoinVector>> rows = {
      {PositionKey(r), basis_sum({{kL, p}, {kD, p}})},
      {PositionKey(checked_add(r, 1)),
       basis_sum({{kL, s * p}, {kR, s * p}, {kU, s * p}, {kD, s * p}})},
      {PositionKey(checked_add(r, 2)), basis_sum({{kR, p}, {kU, p}})},
  };
  return WalkState::from_assignments(lattice_quotient(1, 1).target(), rows);
}

WalkState default_initial_state(const SpacePtr& space) {
  const std::size_t d = space->coin_dimension();
  CoinVector coin;
  if (d == 4) {
    coin = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}};
  } else if (d == 2) {
    const double h = 1.0 / std::numbers::sqrt2;
    coin = {{h, 0.0}, {0.0, h}};
  } else {
    throw Error(ErrorCode::kInvalidParameter,
                "no default initial state for coin dimension " + std::to_string(d));
  }
  const std::vector<std::pair<PositionKey, CoinVector>> rows = {{space->origin(), coin}};
  return WalkState::from_assignments(space, rows);
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"grover2d_to_lazy", "lattice_to_jumps",
                                                 "line_to_circle", "llattice_to_line",
                                                 "lattice_to_doubled"};
  return names;
}

ScenarioDescriptor scenario(std::string_view name, const ScenarioParams& params) {
  ScenarioDescriptor d = [&]() -> ScenarioDescriptor {
    if (name == "grover2d_to_lazy") {
      return grover_scenario(std::string(name), lattice_quotient(1, 0), true);
    }
    if (name == "lattice_to_jumps") {
      return grover_scenario(std::string(name), lattice_quotient(params.k, 1), false);
    }
    if (name == "lattice_to_doubled") {
      return grover_scenario(std::string(name), lattice_quotient(1, 1), true);
    }
    if (name == "line_to_circle") {
      if (params.n_circle < 1) {
        throw Error(ErrorCode::kInvalidParameter, "circle size must be >= 1");
      }
      if (!std::isfinite(params.phi)) throw Error(ErrorCode::kInvalidParameter, "phi not finite");
      SpacePtr line = make_lattice(1);
      ScenarioDescriptor out{std::string(name),
                             WalkSpec(line, CoinAssignment::homogeneous(hadamard_coin())),
                             cyclic_quotient(params.n_circle), params.phi, {}};
      out.states.emplace("default", default_initial_state(line));
      return out;
    }
    if (name == "llattice_to_line") {
      SpacePtr l = make_llattice();
      ScenarioDescriptor out{std::string(name),
                             WalkSpec(l, CoinAssignment::homogeneous(hadamard_coin())),
                             llattice_quotient(), 0.0, {}};
      out.states.emplace("default", default_initial_state(l));
      return out;
    }
    throw Error(ErrorCode::kUnknownScenario, std::string(name));
  }();
  check_pmap(*d.pmap);
  // Fails with kNullProjection if the default state would vanish.
  project_state(*d.pmap, d.phi, d.default_state());
  return d;
}

std::pair<WalkSpec, WalkState> restrict_to_three_coin(const WalkSpec& spec,
                                                      const WalkState& state) {
  if (spec.coin().dimension() != 4 || state.coin_dimension() != 4) {
    throw Error(ErrorCode::kInvalidParameter, "restriction needs a 4-dimensional coin");
  }
  if (!compatible(*spec.space(), *state.space())) {
    throw Error(ErrorCode::kSpaceMismatch, "state is not on the walk's space");
  }
  if (spec.phase()) {
    throw Error(ErrorCode::kInvalidParameter, "restriction of a phased walk is not supported");
  }
  for (std::size_t i = 0; i < state.support_size(); ++i) {
    if (std::abs(state.coin(i)[kD]) > kSubspaceTolerance) {
      throw Error(ErrorCode::kStateOutsideSubspace,
                  "D component at " + state.positions()[i].str());
    }
  }
  auto block = [](const CoinMatrix& c, const PositionKey* where) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (std::abs(c(kD, j)) > kSubspaceTolerance) {
        throw Error(ErrorCode::kSubspaceNotInvariant,
                    "coin maps span{R,L,U} onto D" + (where ? " at " + where->str() : ""));
      }
    }
    std::vector<Amplitude> m(9);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) m[i * 3 + j] = c(i, j);
    }
    return CoinMatrix(3, std::move(m));
  };

  const auto displacements = spec.space()->displacements();
  auto space = std::make_shared<const PositionSpace>(spec.space()->with_displacements(
      {displacements.begin(), displacements.begin() + 3}));
  std::optional<CoinAssignment> coin;
  if (spec.coin().is_homogeneous()) {
    coin = CoinAssignment::homogeneous(block(spec.coin().uniform(), nullptr));
  } else {
    coin = CoinAssignment::positional(
        3, [full = spec.coin(), block](const PositionKey& x) { return block(full.at(x), &x); });
  }

  std::vector<Amplitude> amplitudes;
  amplitudes.reserve(state.support_size() * 3);
  for (std::size_t i = 0; i < state.support_size(); ++i) {
    const auto c = state.coin(i);
    amplitudes.insert(amplitudes.end(), c.begin(), c.begin() + 3);
  }
  WalkState restricted = WalkState::from_rows(
      space, {state.positions().begin(), state.positions().end()}, std::move(amplitudes));
  return {WalkSpec(space, std::move(*coin)), std::move(restricted)};
}

double twist_phase(const WalkSpec& spec, std::string_view label, const PositionKey& start) {
  const PositionSpace& space = *spec.space();
  if (!space.is_finite()) {
    throw Error(ErrorCode::kInvalidParameter, "twist phase needs a finite space");
  }
  const auto c = space.index_of(label);
  if (!c) throw Error(ErrorCode::kUnknownDisplacement, std::string(label));
  const double per_hop =
      spec.phase() ? spec.phase()->phi * static_cast<double>(spec.phase()->sigma[*c]) : 0.0;
  double total = 0.0;
  PositionKey x = start;
  const auto limit = static_cast<std::size_t>(*space.modulus());
  for (std::size_t hops = 0;; ++hops) {
    if (hops > limit) throw Error(ErrorCode::kInvalidParameter, "orbit does not close");
    x = space.displacement(*c).forward(x);
    total += per_hop;
    if (x == start) return total;
  }
}

}  // namespace qwproj
