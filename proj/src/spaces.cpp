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

#include "qwproj/spaces.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <utility>

#include "qwproj/error.hpp"

namespace qwproj {

PositionSpace::PositionSpace(Parts parts) : parts_(std::move(parts)) {
  if (parts_.dimension == 0 || parts_.dimension > PositionKey::kMaxDim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "unsupported space dimension " + std::to_string(parts_.dimension));
  }
  std::set<std::string> seen;
  for (const Displacement& d : parts_.displacements) {
    if (!seen.insert(d.label).second) {
      throw Error(ErrorCode::kInvalidParameter, "duplicate displacement label " + d.label);
    }
    if (!d.forward) throw Error(ErrorCode::kInvalidParameter, "displacement without action");
  }
  if (parts_.modulus && *parts_.modulus < 1) {
    throw Error(ErrorCode::kInvalidModulus, "modulus must be >= 1");
  }
}

std::optional<std::size_t> PositionSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < parts_.displacements.size(); ++i) {
    if (parts_.displacements[i].label == label) return i;
  }
  return std::nullopt;
}

bool PositionSpace::contains(const PositionKey& x) const {
  if (x.size() != parts_.dimension) return false;
  if (parts_.modulus) {
    for (std::int64_t c : x.coords()) {
      if (c < 0 || c >= *parts_.modulus) return false;
    }
  }
  return !parts_.contains || parts_.contains(x);
}

PositionKey PositionSpace::origin() const {
  return parts_.dimension == 1 ? PositionKey(0) : PositionKey(0, 0);
}

std::vector<PositionKey> PositionSpace::enumerate() const {
  if (!parts_.modulus || parts_.dimension != 1) {
    throw Error(ErrorCode::kInvalidParameter, "space " + parts_.name + " is not finite");
  }
  std::vector<PositionKey> out;
  out.reserve(static_cast<std::size_t>(*parts_.modulus));
  for (std::int64_t m = 0; m < *parts_.modulus; ++m) out.emplace_back(m);
  return out;
}

PositionSpace PositionSpace::with_displacements(std::vector<Displacement> displacements) const {
  Parts parts = parts_;
  parts.displacements = std::move(displacements);
  return PositionSpace(std::move(parts));
}

bool same_point_set(const PositionSpace& a, const PositionSpace& b) {
  return &a == &b ||
         (a.name() == b.name() && a.dimension() == b.dimension() && a.modulus() == b.modulus());
}

bool compatible(const PositionSpace& a, const PositionSpace& b) {
  if (&a == &b) return true;
  if (!same_point_set(a, b) || a.coin_dimension() != b.coin_dimension()) return false;
  for (std::size_t i = 0; i < a.coin_dimension(); ++i) {
    if (a.displacement(i).label != b.displacement(i).label) return false;
  }
  return true;
}

namespace {

PositionKey shifted(const PositionKey& x, std::int64_t dx, std::int64_t dy) {
  if (x.size() == 1) return PositionKey(checked_add(x[0], dx));
  return PositionKey(checked_add(x[0], dx), checked_add(x[1], dy));
}

Displacement translation(std::string label, std::int64_t dx, std::int64_t dy) {
  return Displacement{
      std::move(label),
      [dx, dy](const PositionKey& x) { return shifted(x, dx, dy); },
      [dx, dy](const PositionKey& x) -> std::optional<PositionKey> {
        return shifted(x, -dx, -dy);
      },
  };
}

Displacement cyclic_translation(std::string label, std::int64_t step, std::int64_t n) {
  return Displacement{
      std::move(label),
      [step, n](const PositionKey& x) { return PositionKey(floor_mod(x[0] + step, n)); },
      [step, n](const PositionKey& x) -> std::optional<PositionKey> {
        return PositionKey(floor_mod(x[0] - step, n));
      },
  };
}

bool even_site(const PositionKey& x) { return floor_mod(checked_add(x[0], x[1]), 2) == 0; }

}  // namespace

SpacePtr make_lattice(std::size_t dimension) {
  PositionSpace::Parts parts;
  parts.dimension = dimension;
  if (dimension == 1) {
    parts.name = "z1";
    parts.displacements = {translation("R", 1, 0), translation("L", -1, 0)};
  } else if (dimension == 2) {
    parts.name = "z2";
    parts.displacements = {translation("R", 1, 0), translation("L", -1, 0),
                           translation("U", 0, 1), translation("D", 0, -1)};
  } else {
    throw Error(ErrorCode::kDimensionMismatch,
                "lattice dimension must be 1 or 2, got " + std::to_string(dimension));
  }
  return std::make_shared<const PositionSpace>(std::move(parts));
}

SpacePtr make_circle(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidModulus, "circle size must be >= 1");
  PositionSpace::Parts parts;
  parts.name = "circle";
  parts.dimension = 1;
  parts.modulus = n;
  parts.displacements = {cyclic_translation("R", 1, n), cyclic_translation("L", -1, n)};
  return std::make_shared<const PositionSpace>(std::move(parts));
}

SpacePtr make_llattice() {
  PositionSpace::Parts parts;
  parts.name = "llattice";
  parts.dimension = 2;
  // A site's parity decides whether its edges run horizontally (even) or
  // vertically (odd); a and b both flip the parity.
  Displacement a{
      "a",
      [](const PositionKey& x) { return even_site(x) ? shifted(x, 1, 0) : shifted(x, 0, 1); },
      [](const PositionKey& p) -> std::optional<PositionKey> {
        return even_site(p) ? shifted(p, 0, -1) : shifted(p, -1, 0);
      },
  };
  Displacement b{
      "b",
      [](const PositionKey& x) { return even_site(x) ? shifted(x, -1, 0) : shifted(x, 0, -1); },
      [](const PositionKey& p) -> std::optional<PositionKey> {
        return even_site(p) ? shifted(p, 0, 1) : shifted(p, 1, 0);
      },
  };
  parts.displacements = {std::move(a), std::move(b)};
  return std::make_shared<const PositionSpace>(std::move(parts));
}

PositionKey displacement_apply(const PositionSpace& space, const PositionKey& x,
                               std::string_view label) {
  if (!space.contains(x)) {
    throw Error(ErrorCode::kInvalidPosition, x.str() + " is not in " + space.name());
  }
  const auto index = space.index_of(label);
  if (!index) {
    throw Error(ErrorCode::kUnknownDisplacement,
                "no displacement '" + std::string(label) + "' in " + space.name());
  }
  return space.displacement(*index).forward(x);
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

BezoutPair bezout(std::int64_t k, std::int64_t l) {
  if (gcd(k, l) != 1) {
    throw Error(ErrorCode::kNotCoprime,
                "(" + std::to_string(k) + ", " + std::to_string(l) + ") are not coprime");
  }
  if (l == 0) return {k, 0};  // k = +-1, u = 1/k, v free
  // Extended Euclid on (k, l): invariant r_i = s_i*k + t_i*l.
  std::int64_t r0 = k, r1 = l, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  // r0 = +-1; all solutions are u = u0 + t*l.
  const std::int64_t u0 = r0 == 1 ? s0 : -s0;
  const std::int64_t period = l < 0 ? -l : l;
  const std::int64_t up = floor_mod(u0, period);
  const std::int64_t down = up - period;
  const std::int64_t u = (up < -down) ? up : down;  // tie goes to the smaller u
  const std::int64_t v = (1 - checked_mul(u, k)) / l;
  return {u, v};
}

ProjectionMap::ProjectionMap(Parts parts)
    : name_(std::move(parts.name)),
      source_(std::move(parts.source)),
      rho_(std::move(parts.rho)),
      lift_(std::move(parts.lift)),
      sigma_(std::move(parts.sigma)),
      unproject_(std::move(parts.unproject)) {
  if (!source_ || !parts.target_base || !rho_) {
    throw Error(ErrorCode::kInvalidParameter, "projection map needs source, target and rho");
  }
  std::vector<Displacement> induced;
  if (lift_) {
    for (const Displacement& c : source_->displacements()) {
      induced.push_back(Displacement{
          c.label,
          [c, rho = rho_, lift = *lift_](const PositionKey& x) { return rho(c.forward(lift(x))); },
          [c, rho = rho_, lift = *lift_](const PositionKey& x) -> std::optional<PositionKey> {
            if (!c.backward) return std::nullopt;
            const auto pre = c.backward(lift(x));
            if (!pre) return std::nullopt;
            return rho(*pre);
          },
      });
    }
  }
  target_ = std::make_shared<const PositionSpace>(
      parts.target_base->with_displacements(std::move(induced)));
  if (sigma_) {
    const PositionKey o = source_->origin();
    const std::int64_t base = (*sigma_)(o);
    for (const Displacement& c : source_->displacements()) {
      displacement_sigma_.push_back((*sigma_)(c.forward(o)) - base);
    }
  }
}

ProjectionMap ProjectionMap::with_source(SpacePtr source) const {
  if (!source || !same_point_set(*source, *source_)) {
    throw Error(ErrorCode::kSpaceMismatch, name_ + " cannot be rebased onto a different point set");
  }
  Parts parts;
  parts.name = name_;
  parts.source = std::move(source);
  parts.target_base = target_;
  parts.rho = rho_;
  parts.lift = lift_;
  parts.sigma = sigma_;
  parts.unproject = unproject_;
  return ProjectionMap(std::move(parts));
}

ProjectionMap ProjectionMap::from_function(std::string name, SpacePtr source,
                                           SpacePtr target_base, PointMap rho) {
  Parts parts;
  parts.name = std::move(name);
  parts.source = std::move(source);
  parts.target_base = std::move(target_base);
  parts.rho = std::move(rho);
  return ProjectionMap(std::move(parts));
}

PositionKey ProjectionMap::lift(const PositionKey& target_point) const {
  if (!lift_) throw Error(ErrorCode::kInvalidParameter, "projection " + name_ + " has no lift");
  return (*lift_)(target_point);
}

std::int64_t ProjectionMap::sigma(const PositionKey& x) const {
  if (!sigma_) throw Error(ErrorCode::kMissingSigma, "projection " + name_ + " has no sigma");
  return (*sigma_)(x);
}

std::span<const std::int64_t> ProjectionMap::displacement_sigma() const {
  if (!sigma_) throw Error(ErrorCode::kMissingSigma, "projection " + name_ + " has no sigma");
  return displacement_sigma_;
}

std::optional<PositionKey> ProjectionMap::unproject(const PositionKey& r, std::int64_t s) const {
  if (!unproject_) {
    throw Error(ErrorCode::kInvalidParameter, "projection " + name_ + " is not invertible");
  }
  return (*unproject_)(r, s);
}

ProjectionMap lattice_quotient(std::int64_t k, std::int64_t l) {
  const BezoutPair b = bezout(k, l);
  ProjectionMap::Parts parts;
  parts.name = "lattice(" + std::to_string(k) + "," + std::to_string(l) + ")";
  parts.source = make_lattice(2);
  parts.target_base = make_lattice(1);
  parts.rho = [k, l](const PositionKey& x) {
    return PositionKey(checked_add(checked_mul(k, x[0]), checked_mul(l, x[1])));
  };
  parts.lift = [b](const PositionKey& r) {
    return PositionKey(checked_mul(r[0], b.u), checked_mul(r[0], b.v));
  };
  parts.sigma = [b](const PositionKey& x) {
    return checked_add(checked_mul(b.u, x[1]), -checked_mul(b.v, x[0]));
  };
  // (x, y) = M^-1 (r, s) = (u r - l s, v r + k s)
  parts.unproject = [b, k, l](const PositionKey& r,
                              std::int64_t s) -> std::optional<PositionKey> {
    return PositionKey(checked_add(checked_mul(b.u, r[0]), -checked_mul(l, s)),
                       checked_add(checked_mul(b.v, r[0]), checked_mul(k, s)));
  };
  return ProjectionMap(std::move(parts));
}

ProjectionMap cyclic_quotient(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidModulus, "modulus must be >= 1");
  ProjectionMap::Parts parts;
  parts.name = "mod(" + std::to_string(n) + ")";
  parts.source = make_lattice(1);
  parts.target_base = make_circle(n);
  parts.rho = [n](const PositionKey& x) { return PositionKey(floor_mod(x[0], n)); };
  parts.lift = [](const PositionKey& m) { return m; };
  parts.sigma = [](const PositionKey& x) { return x[0]; };
  parts.unproject = [n](const PositionKey& r, std::int64_t s) -> std::optional<PositionKey> {
    if (floor_mod(s, n) != r[0]) return std::nullopt;
    return PositionKey(s);
  };
  return ProjectionMap(std::move(parts));
}

ProjectionMap llattice_quotient() {
  ProjectionMap::Parts parts;
  parts.name = "llattice-diag";
  parts.source = make_llattice();
  parts.target_base = make_lattice(1);
  parts.rho = [](const PositionKey& x) { return PositionKey(checked_add(x[0], x[1])); };
  parts.lift = [](const PositionKey& r) { return PositionKey(r[0], 0); };
  parts.sigma = [](const PositionKey& x) { return checked_add(x[0], x[1]); };
  return ProjectionMap(std::move(parts));
}

ProjectionMap identity_projection(const SpacePtr& space) {
  ProjectionMap::Parts parts;
  parts.name = "identity";
  parts.source = space;
  parts.target_base = space;
  parts.rho = [](const PositionKey& x) { return x; };
  parts.lift = [](const PositionKey& x) { return x; };
  return ProjectionMap(std::move(parts));
}

ProjectionMap compose(const ProjectionMap& first, const ProjectionMap& second) {
  if (!same_point_set(*first.target(), *second.source())) {
    throw Error(ErrorCode::kSpaceMismatch, "cannot compose " + first.name() + " with " +
                                               second.name() + ": target/source mismatch");
  }
  ProjectionMap::Parts parts;
  parts.name = second.name() + "*" + first.name();
  parts.source = first.source();
  parts.target_base = second.target();
  parts.rho = [first, second](const PositionKey& x) { return second.rho(first.rho(x)); };
  if (first.has_lift() && second.has_lift()) {
    parts.lift = [first, second](const PositionKey& x) { return first.lift(second.lift(x)); };
  }
  return ProjectionMap(std::move(parts));
}

ConsistencyReport check_rho_consistency(const ProjectionMap& pmap,
                                        std::span<const PositionKey> window) {
  const PositionSpace& space = *pmap.source();
  const std::size_t nc = space.coin_dimension();
  const std::size_t n = window.size();
  std::vector<PositionKey> image(n);
  std::vector<PositionKey> moved(n * nc);
  for (std::size_t i = 0; i < n; ++i) {
    image[i] = pmap.rho(window[i]);
    for (std::size_t c = 0; c < nc; ++c) {
      moved[i * nc + c] = pmap.rho(space.displacement(c).forward(window[i]));
    }
  }
  ConsistencyReport report;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++report.pairs_checked;
      const bool same = image[i] == image[j];
      for (std::size_t c = 0; c < nc; ++c) {
        if (same != (moved[i * nc + c] == moved[j * nc + c])) {
          report.passed = false;
          report.counterexample =
              ConsistencyReport::Counterexample{window[i], window[j], space.displacement(c).label};
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<PositionKey> box_window(std::int64_t lo, std::int64_t hi, std::size_t dimension) {
  std::vector<PositionKey> out;
  if (dimension == 1) {
    for (std::int64_t x = lo; x <= hi; ++x) out.emplace_back(x);
  } else if (dimension == 2) {
    for (std::int64_t x = lo; x <= hi; ++x) {
      for (std::int64_t y = lo; y <= hi; ++y) out.emplace_back(x, y);
    }
  } else {
    throw Error(ErrorCode::kDimensionMismatch, "window dimension must be 1 or 2");
  }
  return out;
}

}  // namespace qwproj
