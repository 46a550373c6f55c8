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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qwproj/catalog.hpp"
#include "qwproj/error.hpp"
#include "qwproj/projection.hpp"

using namespace qwproj;
using cd = std::complex<double>;

namespace {

WalkState rows_state(const SpacePtr& s, std::vector<std::pair<PositionKey, CoinVector>> rows) {
  return state_new(s, rows);
}

WalkSpec grover2d() { return WalkSpec(make_lattice(2), CoinAssignment::homogeneous(grover_coin())); }

// Sum over each fiber with e^{i phi sigma}, written out directly.
std::map<PositionKey, CoinVector> fiber_sums(const WalkState& s, const ProjectionMap& p,
                                             double phi) {
  std::map<PositionKey, CoinVector> out;
  for (std::size_t i = 0; i < s.support_size(); ++i) {
    const PositionKey& x = s.positions()[i];
    auto& row = out[p.rho(x)];
    row.resize(s.coin_dimension());
    const cd w = phi == 0.0 ? cd(1.0) : std::exp(cd(0.0, phi * static_cast<double>(p.sigma(x))));
    for (std::size_t c = 0; c < row.size(); ++c) row[c] += w * s.coin(i)[c];
  }
  return out;
}

}  // namespace

TEST_CASE("project_state examples") {
  const auto z2 = make_lattice(2);
  const WalkState s = rows_state(z2, {{PositionKey(0, 0), {1.0, 0.0, 0.0, 0.0}},
                                      {PositionKey(0, 1), {0.0, 1.0, 0.0, 0.0}}});
  const WalkState p = project_state(lattice_quotient(1, 0), 0.0, s);
  REQUIRE(p.support_size() == 1);
  CHECK(p.at(PositionKey(0)) == CoinVector{1.0, 1.0, 0.0, 0.0});

  const WalkState anti = rows_state(z2, {{PositionKey(0, 0), {1.0, 0.0, 0.0, 0.0}},
                                         {PositionKey(0, 1), {-1.0, 0.0, 0.0, 0.0}}});
  CHECK_THROWS_WITH_AS(project_state(lattice_quotient(1, 0), 0.0, anti),
                       doctest::Contains("NullProjection"), Error);

  const WalkState same = project_state(identity_projection(z2), 0.0, s);
  CHECK(same.positions()[0] == PositionKey(0, 0));
  CHECK(same.at(PositionKey(0, 1)) == s.at(PositionKey(0, 1)));

  const ProjectionMap square = ProjectionMap::from_function(
      "x^2", z2, make_lattice(1), [](const PositionKey& x) { return PositionKey(x[0] * x[0]); });
  CHECK_THROWS_WITH_AS(project_state(square, 0.5, s), doctest::Contains("MissingSigma"), Error);
  CHECK_THROWS_WITH_AS(project_state(cyclic_quotient(3), 0.0, s),
                       doctest::Contains("SpaceMismatch"), Error);
}

TEST_CASE("project_state normalize flag") {
  const auto z2 = make_lattice(2);
  const WalkState s = rows_state(z2, {{PositionKey(0, 0), {1.0, 0.0, 0.0, 0.0}},
                                      {PositionKey(0, 1), {1.0, 0.0, 0.0, 0.0}}});
  const WalkState raw = project_state(lattice_quotient(1, 0), 0.0, s);
  CHECK(std::abs(norm(raw) - 2.0) < 1e-15);
  CHECK(std::abs(norm(project_state(lattice_quotient(1, 0), 0.0, s, {.normalize = true})) - 1.0) <
        1e-15);
}

TEST_CASE("property: projection equals direct fiber sums and is linear") {
  oracle::Random rng(41);
  const std::vector<ProjectionMap> maps = {lattice_quotient(1, 0), lattice_quotient(2, 1),
                                           lattice_quotient(3, 5), lattice_quotient(1, 1)};
  for (const ProjectionMap& p : maps) {
    for (int trial = 0; trial < 50; ++trial) {
      const double phi = trial % 3 == 0 ? 0.0 : rng.real(-4.0, 4.0);
      const WalkState a = rng.state(p.source(), 4, 6);
      const WalkState b = rng.state(p.source(), 4, 6);
      const ProjectOptions keep{.allow_null = true};
      const WalkState pa = project_state(p, phi, a, keep);
      for (const auto& [r, v] : fiber_sums(a, p, phi)) {
        const CoinVector got = pa.at(r);
        for (std::size_t c = 0; c < v.size(); ++c) CHECK(std::abs(got[c] - v[c]) < 1e-13);
      }
      const cd za = rng.complex(), zb = rng.complex();
      const WalkState lhs = project_state(p, phi, linear_combination(za, a, zb, b), keep);
      const WalkState rhs = linear_combination(za, pa, zb, project_state(p, phi, b, keep));
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("property: composing quotients") {
  oracle::Random rng(42);
  const ProjectionMap first = lattice_quotient(1, 0);
  for (std::int64_t n : {1, 3, 4}) {
    const ProjectionMap second = cyclic_quotient(n).with_source(first.target());
    const ProjectionMap both = compose(first, cyclic_quotient(n));
    for (int trial = 0; trial < 30; ++trial) {
      const WalkState s = rng.state(first.source(), 5, 5);
      const ProjectOptions keep{.allow_null = true};
      const WalkState twice = project_state(second, 0.0, project_state(first, 0.0, s, keep), keep);
      const WalkState once = project_state(both, 0.0, s, keep);
      CHECK(twice.space()->name() == once.space()->name());
      CHECK(twice.positions().size() == once.positions().size());
      for (std::size_t i = 0; i < once.support_size(); ++i) {
        const CoinVector a(once.coin(i).begin(), once.coin(i).end());
        const CoinVector b = twice.at(once.positions()[i]);
        for (std::size_t c = 0; c < a.size(); ++c) CHECK(std::abs(a[c] - b[c]) < 1e-12);
      }
    }
  }
}

TEST_CASE("coin homogeneity") {
  const auto window = box_window(-3, 3, 2);
  CHECK(check_coin_homogeneity(grover2d(), lattice_quotient(1, 0), window).passed);

  // Coin depends on y: fails under rho = x.
  const WalkSpec by_y(make_lattice(2), CoinAssignment::positional(4, [](const PositionKey& x) {
                        return x[1] == 0 ? grover_coin() : CoinMatrix::identity(4);
                      }));
  const HomogeneityReport bad = check_coin_homogeneity(by_y, lattice_quotient(1, 0), window);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->first[0] == bad.witness->second[0]);
  CHECK_THROWS_WITH_AS(induced_walk(by_y, lattice_quotient(1, 0), 0.0, window),
                       doctest::Contains("InhomogeneousCoin"), Error);

  // Coin depends on x mod 3 only: passes under cyclic_quotient(3).
  const auto rot = [](const PositionKey& x) {
    const double t = 0.5 * static_cast<double>(floor_mod(x[0], 3));
    return CoinMatrix(2, {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)});
  };
  const WalkSpec periodic(make_lattice(1), CoinAssignment::positional(2, rot));
  const auto line = box_window(-10, 10, 1);
  CHECK(check_coin_homogeneity(periodic, cyclic_quotient(3), line).passed);
  const WalkSpec on_circle = induced_walk(periodic, cyclic_quotient(3), 0.0, line);
  for (std::int64_t m = 0; m < 3; ++m) {
    CHECK(on_circle.coin().at(PositionKey(m)).max_abs_diff(rot(PositionKey(m))) == 0.0);
  }
  CHECK_THROWS_WITH_AS(induced_walk(periodic, cyclic_quotient(3), 0.0),
                       doctest::Contains("InvalidParameter"), Error);

  // Periodic coin, commuting with the phase projection as well.
  oracle::Random rng(43);
  const WalkState psi = rng.state(make_lattice(1), 4, 5);
  const CommutationReport r = verify_commutation(periodic, cyclic_quotient(3), 0.9, psi, 25, 1e-10);
  CHECK(r.passed);
}

TEST_CASE("induced walks") {
  const WalkSpec lazy = induced_walk(grover2d(), lattice_quotient(1, 0), 0.0);
  CHECK(lazy.space()->name() == "z1");
  CHECK(lazy.coin().uniform().max_abs_diff(grover_coin()) == 0.0);
  CHECK_FALSE(lazy.phase().has_value());

  const WalkSpec line(make_lattice(1), CoinAssignment::homogeneous(hadamard_coin()));
  const WalkSpec circle = induced_walk(line, cyclic_quotient(4), 0.5);
  REQUIRE(circle.phase().has_value());
  CHECK(circle.phase()->sigma == std::vector<std::int64_t>{1, -1});
  CHECK(std::abs(twist_phase(circle, "R", PositionKey(2)) - 2.0) < 1e-15);

  const WalkSpec l(make_llattice(), CoinAssignment::homogeneous(hadamard_coin()));
  const WalkSpec canonical = induced_walk(l, llattice_quotient(), 0.0);
  CHECK(canonical.space()->displacement(0).forward(PositionKey(0)) == PositionKey(1));
  CHECK(canonical.space()->displacement(1).forward(PositionKey(0)) == PositionKey(-1));

  // The identity projection reproduces the walk.
  oracle::Random rng(44);
  const WalkSpec same = induced_walk(grover2d(), identity_projection(make_lattice(2)), 0.0);
  const WalkState s = rng.state(make_lattice(2), 3, 5);
  CHECK(max_abs_diff(evolve(same, s, 12), evolve(grover2d(), s, 12)) == 0.0);
}

TEST_CASE("verify_commutation examples") {
  const WalkState psi =
      state_new(make_lattice(2), std::vector<std::pair<PositionKey, CoinVector>>{
                                     {PositionKey(0, 0), {0.5, cd(0, 0.5), -0.5, cd(0, -0.5)}}});
  const CommutationReport lazy =
      verify_commutation(grover2d(), lattice_quotient(1, 0), 0.0, psi, 30, 1e-10);
  CHECK(lazy.passed);
  CHECK(lazy.steps == 30);
  CHECK(lazy.residuals.size() == 31);
  CHECK(lazy.max_residual < 1e-10);

  const CommutationReport id =
      verify_commutation(grover2d(), identity_projection(make_lattice(2)), 0.0, psi, 10, 1e-10);
  CHECK(id.max_residual == 0.0);

  const ScenarioDescriptor c = scenario("line_to_circle", {.n_circle = 4, .phi = std::numbers::pi / 3});
  const CommutationReport twisted =
      verify_commutation(c.walk, *c.pmap, c.phi, c.default_state(), 30, 1e-10);
  CHECK(twisted.passed);

  CHECK_THROWS_WITH_AS(verify_commutation(grover2d(), lattice_quotient(1, 0), 0.0, psi, 3, 0.0),
                       doctest::Contains("InvalidParameter"), Error);
  const WalkState anti =
      state_new(make_lattice(2), std::vector<std::pair<PositionKey, CoinVector>>{
                                     {PositionKey(0, 0), {1.0, 0.0, 0.0, 0.0}},
                                     {PositionKey(0, 1), {-1.0, 0.0, 0.0, 0.0}}});
  CHECK_THROWS_WITH_AS(verify_commutation(grover2d(), lattice_quotient(1, 0), 0.0, anti, 3, 1e-10),
                       doctest::Contains("NullProjection"), Error);
}

TEST_CASE("property: per-step intertwining on random states") {
  oracle::Random rng(45);
  for (const std::string& name : scenario_names()) {
    CAPTURE(name);
    ScenarioParams params;
    params.k = 3;
    const ScenarioDescriptor d = scenario(name, params);
    for (double ph : {0.0, 0.8}) {
      const WalkSpec induced = induced_walk(d.walk, *d.pmap, ph);
      for (int trial = 0; trial < 100; ++trial) {
        const WalkState psi = rng.state(d.walk.space(), 4, 5);
        const IntertwiningResiduals r = intertwining_residuals(d.walk, induced, *d.pmap, ph, psi);
        CHECK(r.step < 1e-12);
        CHECK(r.coin < 1e-12);
        CHECK(r.full < 1e-12);
      }
    }
  }
}
