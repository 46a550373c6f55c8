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
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "qwproj/catalog.hpp"
#include "qwproj/error.hpp"
#include "qwproj/projection.hpp"

using namespace qwproj;
using cd = std::complex<double>;

namespace {

WalkSpec grover2d() { return WalkSpec(make_lattice(2), CoinAssignment::homogeneous(grover_coin())); }

// lambda = <phi|U phi>; the residual ||U phi - lambda phi|| decides.
std::pair<cd, double> eigen(const WalkSpec& w, const WalkState& s) {
  const WalkState u = evolve(w, s, 1);
  const cd lambda = inner(s, u) / inner(s, s);
  return {lambda, distance(u, scale(lambda, s))};
}

}  // namespace

TEST_CASE("grover and hadamard coins") {
  const CoinMatrix g = grover_coin();
  CHECK(g(0, 0) == cd(-0.5));
  CHECK(g(0, 1) == cd(0.5));
  CHECK(g.unitarity_residual() < 1e-15);
  CHECK((g * g).max_abs_diff(CoinMatrix::identity(4)) == 0.0);
  CHECK(hadamard_coin()(1, 1).real() < 0.0);
}

TEST_CASE("trapped states") {
  const WalkState s = trapped_state(0, 0, TrapSign::kPlus);
  const std::set<PositionKey> sites(s.positions().begin(), s.positions().end());
  CHECK(sites == std::set<PositionKey>{PositionKey(0, 0), PositionKey(0, 1), PositionKey(1, 0),
                                       PositionKey(1, 1)});
  CHECK(std::abs(s.at(PositionKey(0, 0))[1] - 1.0 / (2.0 * std::numbers::sqrt2)) < 1e-16);
  CHECK(std::abs(norm(s) - 1.0) < 1e-15);
  const WalkState m = trapped_state(0, 0, TrapSign::kMinus);
  CHECK(m.at(PositionKey(0, 1))[1].real() < 0.0);
  CHECK(std::abs(inner(s, m)) < 1e-15);
}

TEST_CASE("property: trapped states stay put and are eigenstates") {
  for (auto [x, y] : {std::pair{0, 0}, {3, -2}, {-5, 7}}) {
    for (TrapSign sign : {TrapSign::kPlus, TrapSign::kMinus}) {
      const WalkState s = trapped_state(x, y, sign);
      const auto [lambda, residual] = eigen(grover2d(), s);
      CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-12);
      CHECK(residual < 1e-12);
      const std::set<PositionKey> home(s.positions().begin(), s.positions().end());
      WalkState cur = s;
      for (int t = 1; t <= 50; ++t) {
        cur = evolve(grover2d(), cur, 1);
        double leak = 0.0;
        for (std::size_t i = 0; i < cur.support_size(); ++i) {
          if (home.count(cur.positions()[i])) continue;
          for (cd a : cur.coin(i)) leak += std::norm(a);
        }
        CHECK(std::sqrt(leak) < 1e-12);
      }
    }
  }
}

TEST_CASE("projected trapped states") {
  const WalkState lazy_minus = projected_trapped_state(TrapProjection::kLazy, 2, 5, TrapSign::kMinus);
  CHECK(lazy_minus.at(PositionKey(2))[1] == cd(0.0));
  const WalkState dl = projected_trapped_state(TrapProjection::kDoubleLine, 2, 5, TrapSign::kPlus);
  const std::set<PositionKey> sites(dl.positions().begin(), dl.positions().end());
  CHECK(sites == std::set<PositionKey>{PositionKey(7), PositionKey(8), PositionKey(9)});

  for (auto [x, y] : {std::pair{0, 0}, {2, 5}, {-3, 1}}) {
    for (TrapSign sign : {TrapSign::kPlus, TrapSign::kMinus}) {
      const WalkState t = trapped_state(x, y, sign);
      const auto [lambda, residual] = eigen(grover2d(), t);
      const std::pair<TrapProjection, ProjectionMap> cases[] = {
          {TrapProjection::kLazy, lattice_quotient(1, 0)},
          {TrapProjection::kDoubleLine, lattice_quotient(1, 1)}};
      for (const auto& [kind, pmap] : cases) {
        const WalkState printed = projected_trapped_state(kind, x, y, sign);
        const WalkState projected = project_state(pmap, 0.0, t);
        CHECK(max_abs_diff(printed, projected) < 1e-14);
        const WalkSpec induced = induced_walk(grover2d(), pmap, 0.0);
        const WalkState moved = evolve(induced, printed, 1);
        CHECK(distance(moved, scale(lambda, printed)) < 1e-12);
      }
    }
  }
}

TEST_CASE("scenario wiring") {
  CHECK(scenario_names().size() == 5);
  const auto steps = [](const ScenarioDescriptor& d) {
    std::vector<std::int64_t> out;
    for (const Displacement& c : d.pmap->target()->displacements()) {
      out.push_back(c.forward(PositionKey(0))[0]);
    }
    return out;
  };
  CHECK(steps(scenario("grover2d_to_lazy")) == std::vector<std::int64_t>{1, -1, 0, 0});
  CHECK(steps(scenario("lattice_to_jumps", {.k = 3})) == std::vector<std::int64_t>{3, -3, 1, -1});
  CHECK(steps(scenario("lattice_to_doubled")) == std::vector<std::int64_t>{1, -1, 1, -1});
  CHECK(steps(scenario("llattice_to_line")) == std::vector<std::int64_t>{1, -1});

  const double phi = 0.37;
  const ScenarioDescriptor c = scenario("line_to_circle", {.n_circle = 4, .phi = phi});
  const WalkSpec circle = induced_walk(c.walk, *c.pmap, c.phi);
  CHECK(std::abs(twist_phase(circle, "R", PositionKey(0)) - 4 * phi) < 1e-15);
  CHECK(std::abs(twist_phase(circle, "L", PositionKey(0)) + 4 * phi) < 1e-15);

  CHECK_THROWS_WITH_AS(scenario("nope"), doctest::Contains("UnknownScenario"), Error);
  CHECK_THROWS_WITH_AS(scenario("line_to_circle", {.n_circle = 0}),
                       doctest::Contains("InvalidParameter"), Error);
  CHECK(steps(scenario("lattice_to_jumps", {.k = 0})) == std::vector<std::int64_t>{0, 0, 1, -1});
  CHECK(scenario("grover2d_to_lazy").states.count("trapped-") == 1);
  CHECK(std::abs(norm(scenario("llattice_to_line").default_state()) - 1.0) < 1e-15);
}

TEST_CASE("line_to_circle at phi = 0 is the plain projection") {
  const ScenarioDescriptor c = scenario("line_to_circle", {.n_circle = 5, .phi = 0.0});
  const WalkSpec circle = induced_walk(c.walk, *c.pmap, 0.0);
  CHECK_FALSE(circle.phase().has_value());
  const WalkState ours = evolve(circle, project_state(*c.pmap, 0.0, c.default_state()), 17);
  const WalkState plain = project_state(*c.pmap, 0.0, evolve(c.walk, c.default_state(), 17));
  CHECK(max_abs_diff(ours, plain) < 1e-12);
}

TEST_CASE("property: every scenario commutes from several initial states") {
  oracle::Random rng(61);
  for (const std::string& name : scenario_names()) {
    const ScenarioDescriptor d = scenario(name, {.k = 3, .n_circle = 4, .phi = 1.0});
    std::vector<WalkState> inits = {d.default_state(), rng.state(d.walk.space(), 2, 3),
                                    rng.state(d.walk.space(), 3, 4)};
    for (const auto& [label, s] : d.states) inits.push_back(s);
    for (const WalkState& s : inits) {
      const CommutationReport r = verify_commutation(d.walk, *d.pmap, d.phi, s, 30, 1e-10);
      CHECK_MESSAGE(r.passed, name << " max residual " << r.max_residual);
    }
  }
}

TEST_CASE("property: catalog walks are unitary") {
  oracle::Random rng(62);
  for (const std::string& name : scenario_names()) {
    const ScenarioDescriptor d = scenario(name, {.phi = 0.6});
    const WalkSpec induced = induced_walk(d.walk, *d.pmap, d.phi);
    for (const WalkSpec* w : {&d.walk, &induced}) {
      const WalkState s = rng.state(w->space(), 2, 3);
      CHECK(std::abs(norm(evolve(*w, s, 100)) - norm(s)) < 1e-12 * 101 * norm(s));
    }
  }
}

TEST_CASE("restrict_to_three_coin") {
  // diag(F3, 1) with F3 the 3-point Fourier matrix.
  const double r = 1.0 / std::sqrt(3.0);
  const cd w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::vector<Amplitude> m(16);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i * 4 + j] = r * std::pow(w, i * j);
  }
  m[15] = 1.0;
  const WalkSpec lazy(lattice_quotient(1, 0).target(), CoinAssignment::homogeneous(CoinMatrix(4, m)));
  oracle::Random rng(63);
  std::vector<std::pair<PositionKey, CoinVector>> rows;
  for (int x = -2; x <= 2; ++x) {
    rows.emplace_back(PositionKey(x), CoinVector{rng.complex(), rng.complex(), rng.complex(), 0.0});
  }
  const WalkState s = state_new(lazy.space(), rows);
  const auto [three, s3] = restrict_to_three_coin(lazy, s);
  CHECK(three.coin().dimension() == 3);
  for (int n : {0, 1, 20}) {
    const WalkState full = evolve(lazy, s, n);
    const WalkState small = evolve(three, s3, n);
    CHECK(full.support_size() == small.support_size());
    double worst = 0.0;
    for (std::size_t i = 0; i < full.support_size(); ++i) {
      const CoinVector v = small.at(full.positions()[i]);
      for (std::size_t c = 0; c < 3; ++c) worst = std::max(worst, std::abs(full.coin(i)[c] - v[c]));
      worst = std::max(worst, std::abs(full.coin(i)[3]));
    }
    CHECK(worst < 1e-12);
  }

  CHECK_THROWS_WITH_AS(restrict_to_three_coin(grover2d(), trapped_state(0, 0, TrapSign::kPlus)),
                       doctest::Contains("StateOutsideSubspace"), Error);
  const WalkState no_d = state_new(make_lattice(2), std::vector<std::pair<PositionKey, CoinVector>>{
                                                        {PositionKey(0, 0), {1.0, 0.0, 0.0, 0.0}}});
  CHECK_THROWS_WITH_AS(restrict_to_three_coin(grover2d(), no_d),
                       doctest::Contains("SubspaceNotInvariant"), Error);
}
