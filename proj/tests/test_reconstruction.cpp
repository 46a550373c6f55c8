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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qwproj/catalog.hpp"
#include "qwproj/error.hpp"
#include "qwproj/projection.hpp"
#include "qwproj/reconstruction.hpp"

using namespace qwproj;
using cd = std::complex<double>;

namespace {

WalkSpec grover2d() { return WalkSpec(make_lattice(2), CoinAssignment::homogeneous(grover_coin())); }

WalkState uniform_origin() {
  return state_new(make_lattice(2), std::vector<std::pair<PositionKey, CoinVector>>{
                                        {PositionKey(0, 0), {0.5, 0.5, 0.5, 0.5}}});
}

}  // namespace

TEST_CASE("sigma_support_bounds") {
  const auto z2 = make_lattice(2);
  CHECK(sigma_support_bounds(uniform_origin(), lattice_quotient(2, 1)) == SigmaBounds{0, 0});
  const WalkState column = state_new(z2, std::vector<std::pair<PositionKey, CoinVector>>{
                                             {PositionKey(0, 0), {1.0, 0.0, 0.0, 0.0}},
                                             {PositionKey(0, 1), {1.0, 0.0, 0.0, 0.0}},
                                             {PositionKey(0, 2), {1.0, 0.0, 0.0, 0.0}}});
  CHECK(sigma_support_bounds(column, lattice_quotient(1, 0)) == SigmaBounds{0, 2});
  const ProjectionMap square = ProjectionMap::from_function(
      "x^2", z2, make_lattice(1), [](const PositionKey& x) { return PositionKey(x[0] * x[0]); });
  CHECK_THROWS_WITH_AS(sigma_support_bounds(column, square), doctest::Contains("MissingSigma"),
                       Error);
  CHECK_THROWS_AS(sigma_support_bounds(WalkState(z2), lattice_quotient(1, 0)), Error);

  for (auto [k, l] : {std::pair{1, 0}, {2, 1}, {1, 1}}) {
    const ProjectionMap p = lattice_quotient(k, l);
    for (int n = 0; n <= 10; ++n) {
      const SigmaBounds b = sigma_support_bounds(evolve(grover2d(), uniform_origin(), n), p);
      CHECK(b.min >= -n);
      CHECK(b.max <= n);
      const SigmaBounds prior = reachable_sigma_bounds(p, uniform_origin(), n);
      CHECK(prior.min <= b.min);
      CHECK(prior.max >= b.max);
    }
  }
}

TEST_CASE("grid sizing") {
  CHECK(default_grid_size({-10, 10}) == 21);
  CHECK(default_grid_size({0, 1}) == 3);
  CHECK(default_grid_size({0, 0}) == 1);
  CHECK(ReconstructionPlan(lattice_quotient(2, 1), {-10, 10}).samples() == 21);
  CHECK_THROWS_WITH_AS(ReconstructionPlan(lattice_quotient(2, 1), {-10, 10}, 20),
                       doctest::Contains("GridTooCoarse"), Error);
  const auto grid = phase_grid(4);
  CHECK(grid[0] == 0.0);
  CHECK(std::abs(grid[1] - std::numbers::pi / 2) < 1e-15);
}

TEST_CASE("single point source is recovered from any valid grid") {
  const ProjectionMap p = lattice_quotient(2, 1);
  for (std::int64_t m : {1, 2, 5}) {
    const ReconstructionPlan plan(p, {0, 0}, m);
    const PhaseFamily family = project_on_grid(plan, uniform_origin());
    const WalkState back = reconstruct(family, p, plan.bounds());
    CHECK(max_abs_diff(back, uniform_origin()) < 1e-15);
    CHECK(back.support_size() == 1);
  }
}

TEST_CASE("Grover 2D round trip, k=2 l=1, n=10, M=21") {
  const ProjectionMap p = lattice_quotient(2, 1);
  const WalkState target = evolve(grover2d(), uniform_origin(), 10);
  const ReconstructionPlan plan(p, {-10, 10}, 21);
  const WalkState from_projections = reconstruct(project_on_grid(plan, target), p, plan.bounds());
  CHECK(max_abs_diff(from_projections, target) < 1e-10);
  const PhaseFamily evolved = evolve_projection_family(grover2d(), plan, uniform_origin(), 10);
  CHECK(max_abs_diff(reconstruct(evolved, p, plan.bounds()), target) < 1e-10);
  const PhaseFamily absorbed = evolve_projection_family(grover2d(), plan, uniform_origin(), 10,
                                                        PhaseConvention::kCoinAbsorbed);
  for (std::size_t j = 0; j < evolved.size(); ++j) {
    CHECK(max_abs_diff(evolved[j].second, absorbed[j].second) < 1e-14);
  }
}

TEST_CASE("reconstruct errors") {
  const ProjectionMap p = lattice_quotient(2, 1);
  const ReconstructionPlan plan(p, {-2, 2});
  PhaseFamily family = project_on_grid(plan, uniform_origin());
  CHECK_THROWS_WITH_AS(reconstruct(family, p, {-3, 2}), doctest::Contains("GridTooCoarse"), Error);
  PhaseFamily shifted = family;
  shifted[1].first += 1e-3;
  CHECK_THROWS_WITH_AS(reconstruct(shifted, p, plan.bounds()),
                       doctest::Contains("InconsistentGrid"), Error);
  PhaseFamily repeated = family;
  repeated[2] = repeated[1];
  CHECK_THROWS_WITH_AS(reconstruct(repeated, p, plan.bounds()),
                       doctest::Contains("InconsistentGrid"), Error);
  CHECK_THROWS_WITH_AS(reconstruct(family, llattice_quotient(), plan.bounds()),
                       doctest::Contains("InvalidParameter"), Error);
}

TEST_CASE("aliasing: one phase short of the range loses information") {
  for (auto [k, l] : {std::pair{1, 0}, {2, 1}}) {
    const ProjectionMap p = lattice_quotient(k, l);
    const WalkState target = evolve(grover2d(), uniform_origin(), 10);
    const SigmaBounds full = sigma_support_bounds(target, p);
    const std::int64_t m = full.span() - 1;
    const ReconstructionPlan plan(p, {full.min, full.min + m - 1}, m);
    const WalkState back = reconstruct(project_on_grid(plan, target), p, plan.bounds());
    CHECK(max_abs_diff(back, target) > 1e-6);
  }
}

TEST_CASE("property: round trip over catalog sources and many (k, l)") {
  oracle::Random rng(51);
  for (auto [k, l] : {std::pair{1, 0}, {0, 1}, {2, 1}, {1, 1}, {3, 5}, {-2, 3}, {5, -3}}) {
    const ProjectionMap p = lattice_quotient(k, l);
    for (int trial = 0; trial < 5; ++trial) {
      const WalkState psi0 = rng.state(make_lattice(2), 2, 3);
      const int n = static_cast<int>(rng.integer(0, 8));
      const SigmaBounds b = reachable_sigma_bounds(p, psi0, n);
      const ReconstructionPlan plan(p, b);
      const WalkState back =
          reconstruct(evolve_projection_family(grover2d(), plan, psi0, n), p, b);
      CHECK(max_abs_diff(back, evolve(grover2d(), psi0, n)) < 1e-10);
    }
  }
  // Line to circle: sigma is the line coordinate itself.
  const ScenarioDescriptor c = scenario("line_to_circle", {.n_circle = 3});
  for (int n : {0, 5, 12}) {
    const SigmaBounds b = reachable_sigma_bounds(*c.pmap, c.default_state(), n);
    const ReconstructionPlan plan(*c.pmap, b);
    const WalkState back =
        reconstruct(evolve_projection_family(c.walk, plan, c.default_state(), n), *c.pmap, b);
    CHECK(max_abs_diff(back, evolve(c.walk, c.default_state(), n)) < 1e-10);
  }
}

TEST_CASE("property: linearity, phase equivariance, order independence") {
  oracle::Random rng(52);
  const ProjectionMap p = lattice_quotient(2, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const WalkState a = rng.state(make_lattice(2), 3, 5);
    const WalkState b = rng.state(make_lattice(2), 3, 5);
    const SigmaBounds bounds{-4, 4};
    const ReconstructionPlan plan(p, bounds, 11);
    const PhaseFamily fa = project_on_grid(plan, a);
    const PhaseFamily fb = project_on_grid(plan, b);
    PhaseFamily sum;
    for (std::size_t j = 0; j < fa.size(); ++j) {
      sum.emplace_back(fa[j].first, linear_combination(1.0, fa[j].second, 1.0, fb[j].second));
    }
    const WalkState ra = reconstruct(fa, p, bounds);
    const WalkState rb = reconstruct(fb, p, bounds);
    CHECK(max_abs_diff(reconstruct(sum, p, bounds), linear_combination(1.0, ra, 1.0, rb)) < 1e-10);

    // Projections taken at phi_j + delta but labelled phi_j.
    const double delta = rng.real(-0.3, 0.3);
    PhaseFamily shifted;
    for (double phi : plan.grid()) {
      shifted.emplace_back(phi, project_state(p, phi + delta, a, {.allow_null = true}));
    }
    const WalkState rs = reconstruct(shifted, p, bounds);
    for (std::size_t i = 0; i < ra.support_size(); ++i) {
      const PositionKey& x = ra.positions()[i];
      const cd w = std::polar(1.0, static_cast<double>(p.sigma(x)) * delta);
      const CoinVector got = rs.at(x);
      for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(got[c] - w * ra.coin(i)[c]) < 1e-10);
    }

    PhaseFamily shuffled = fa;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(static_cast<unsigned>(trial)));
    CHECK(max_abs_diff(reconstruct(shuffled, p, bounds), ra) < 1e-13);
  }
}
