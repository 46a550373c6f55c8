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

#ifndef QWPROJ_SPACES_HPP_
#define QWPROJ_SPACES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwproj/position.hpp"

namespace qwproj {

/// An injection x -> x.c on a position set. `backward` is the partial inverse:
/// it returns the unique preimage when one exists.
struct Displacement {
  std::string label;
  std::function<PositionKey(const PositionKey&)> forward;
  std::function<std::optional<PositionKey>(const PositionKey&)> backward;
};

/// A countable position set X together with its ordered displacement family.
/// The order of `displacements()` is the coin basis order of every walk on
/// this space.
class PositionSpace {
 public:
  struct Parts {
    std::string name;
    std::size_t dimension = 0;
    std::vector<Displacement> displacements;
    std::function<bool(const PositionKey&)> contains;
    // Set for finite cyclic spaces: positions are {0, ..., modulus-1}.
    std::optional<std::int64_t> modulus;
  };

  explicit PositionSpace(Parts parts);

  const std::string& name() const { return parts_.name; }
  std::size_t dimension() const { return parts_.dimension; }
  std::size_t coin_dimension() const { return parts_.displacements.size(); }
  std::optional<std::int64_t> modulus() const { return parts_.modulus; }

  std::span<const Displacement> displacements() const { return parts_.displacements; }
  const Displacement& displacement(std::size_t i) const { return parts_.displacements.at(i); }
  std::optional<std::size_t> index_of(std::string_view label) const;

  bool contains(const PositionKey& x) const;
  PositionKey origin() const;

  bool is_finite() const { return parts_.modulus.has_value(); }
  /// All positions of a finite space in ascending order. Throws for infinite
  /// spaces.
  std::vector<PositionKey> enumerate() const;

  /// Same underlying set and coin basis, different displacement family.
  PositionSpace with_displacements(std::vector<Displacement> displacements) const;

 private:
  Parts parts_;
};

using SpacePtr = std::shared_ptr<const PositionSpace>;

/// Same name, dimension and modulus; the displacement families may differ.
bool same_point_set(const PositionSpace& a, const PositionSpace& b);

/// Spaces are compared by identity first, then by name, dimension, modulus and
/// displacement labels.
bool compatible(const PositionSpace& a, const PositionSpace& b);

/// Z (labels R, L) or Z^2 (labels R, L, U, D).
SpacePtr make_lattice(std::size_t dimension);
/// Z_N with labels R (+1) and L (-1).
SpacePtr make_circle(std::int64_t n);
/// L-lattice on Z^2 points: `a` raises x+y by one (x+1 on even sites, y+1 on
/// odd sites), `b` lowers it (x-1 on even sites, y-1 on odd sites).
SpacePtr make_llattice();

PositionKey displacement_apply(const PositionSpace& space, const PositionKey& x,
                               std::string_view label);

struct BezoutPair {
  std::int64_t u = 0;
  std::int64_t v = 0;
  friend bool operator==(const BezoutPair&, const BezoutPair&) = default;
};

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// u*k + v*l = 1 with |u| minimal (ties toward the smaller u; when l = 0 the
/// free v is taken as 0). Throws kNotCoprime.
BezoutPair bezout(std::int64_t k, std::int64_t l);

/// A projection map rho: X -> X' with an optional phase coordinate sigma.
///
/// The target space carries the induced displacements c'(x') = rho(lift(x').c),
/// built from a section `lift` of rho. Maps without a lift are checker-only:
/// their target has no displacements and no induced walk can be formed.
class ProjectionMap {
 public:
  using PointMap = std::function<PositionKey(const PositionKey&)>;
  using SigmaMap = std::function<std::int64_t(const PositionKey&)>;
  using Unproject = std::function<std::optional<PositionKey>(const PositionKey&, std::int64_t)>;

  struct Parts {
    std::string name;
    SpacePtr source;
    // Supplies the target's name, dimension, membership and modulus; its
    // displacements are replaced by the induced ones.
    SpacePtr target_base;
    PointMap rho;
    std::optional<PointMap> lift;
    std::optional<SigmaMap> sigma;
    // Inverse of the coordinate transform x -> (rho(x), sigma(x)).
    std::optional<Unproject> unproject;
  };

  explicit ProjectionMap(Parts parts);

  /// A checker-only map from an arbitrary function.
  static ProjectionMap from_function(std::string name, SpacePtr source, SpacePtr target_base,
                                     PointMap rho);

  /// The same map read on `source`, a space with the same point set but
  /// possibly another displacement family; the induced target follows.
  ProjectionMap with_source(SpacePtr source) const;

  const std::string& name() const { return name_; }
  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }

  PositionKey rho(const PositionKey& x) const { return rho_(x); }
  bool has_lift() const { return lift_.has_value(); }
  PositionKey lift(const PositionKey& target_point) const;

  bool has_sigma() const { return sigma_.has_value(); }
  std::int64_t sigma(const PositionKey& x) const;
  /// sigma(c) for each source displacement, in coin order.
  std::span<const std::int64_t> displacement_sigma() const;

  bool can_unproject() const { return unproject_.has_value(); }
  std::optional<PositionKey> unproject(const PositionKey& r, std::int64_t s) const;

 private:
  std::string name_;
  SpacePtr source_;
  SpacePtr target_;
  PointMap rho_;
  std::optional<PointMap> lift_;
  std::optional<SigmaMap> sigma_;
  std::optional<Unproject> unproject_;
  std::vector<std::int64_t> displacement_sigma_;
};

/// rho(x, y) = kx + ly from Z^2 onto Z, sigma(x, y) = uy - vx with (u, v) =
/// bezout(k, l). Induced displacements: R +k, L -k, U +l, D -l.
ProjectionMap lattice_quotient(std::int64_t k, std::int64_t l);
/// rho(x) = x mod N from Z onto Z_N, sigma(x) = x.
ProjectionMap cyclic_quotient(std::int64_t n);
/// rho(x, y) = x + y from the L-lattice onto Z; induced a +1, b -1. sigma is
/// rho itself.
ProjectionMap llattice_quotient();
ProjectionMap identity_projection(const SpacePtr& space);
/// first then second. The composite carries no sigma.
ProjectionMap compose(const ProjectionMap& first, const ProjectionMap& second);

struct ConsistencyReport {
  struct Counterexample {
    PositionKey x;
    PositionKey y;
    std::string label;
  };
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::optional<Counterexample> counterexample;
};

/// Brute force over all ordered pairs of the window and all displacements:
/// rho(x) == rho(y) <=> rho(x.c) == rho(y.c).
ConsistencyReport check_rho_consistency(const ProjectionMap& pmap,
                                        std::span<const PositionKey> window);

/// Every point of the box [lo, hi]^dimension, lexicographic order.
std::vector<PositionKey> box_window(std::int64_t lo, std::int64_t hi, std::size_t dimension);

}  // namespace qwproj

#endif  // QWPROJ_SPACES_HPP_
