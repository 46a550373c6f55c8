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

#ifndef QWPROJ_WALK_HPP_
#define QWPROJ_WALK_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qwproj/hilbert.hpp"
#include "qwproj/spaces.hpp"

namespace qwproj {

/// Unitarity tolerance for coin matrices (max-norm of C^dagger C - I).
inline constexpr double kUnitarityTolerance = 1e-12;

/// A dense dim x dim complex matrix, row-major.
class CoinMatrix {
 public:
  CoinMatrix(std::size_t dim, std::vector<Amplitude> row_major);

  static CoinMatrix identity(std::size_t dim);
  static CoinMatrix diagonal(std::span<const Amplitude> entries);

  std::size_t dim() const { return dim_; }
  Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const Amplitude> data() const { return entries_; }

  CoinMatrix adjoint() const;
  friend CoinMatrix operator*(const CoinMatrix& a, const CoinMatrix& b);

  /// max |(C^dagger C - I)_ij|
  double unitarity_residual() const;
  double max_abs_diff(const CoinMatrix& other) const;

 private:
  std::size_t dim_;
  std::vector<Amplitude> entries_;
};

/// The map x -> C_x. Homogeneous assignments hold one matrix; positional ones
/// evaluate a field and check unitarity of every matrix they hand out.
class CoinAssignment {
 public:
  using Field = std::function<CoinMatrix(const PositionKey&)>;

  /// Throws kNonUnitary.
  static CoinAssignment homogeneous(CoinMatrix matrix);
  static CoinAssignment positional(std::size_t dim, Field field);

  bool is_homogeneous() const { return !field_; }
  std::size_t dimension() const { return dim_; }
  /// Throws kNonUnitary for a non-unitary positional value.
  CoinMatrix at(const PositionKey& x) const;
  /// The homogeneous matrix. Throws kInvalidParameter for positional coins.
  const CoinMatrix& uniform() const;

 private:
  CoinAssignment() = default;

  std::size_t dim_ = 0;
  std::optional<CoinMatrix> uniform_;
  Field field_;
};

/// Phase weights e^{i phi sigma(c)} carried by the step of a projected walk.
struct StepPhase {
  double phi = 0.0;
  std::vector<std::int64_t> sigma;  // per displacement, coin order
};

/// U = S C on `space`.
class WalkSpec {
 public:
  /// Throws kDimensionMismatch when the coin (or sigma) dimension differs
  /// from the space's displacement count.
  WalkSpec(SpacePtr space, CoinAssignment coin, std::optional<StepPhase> phase = std::nullopt);

  const SpacePtr& space() const { return space_; }
  const CoinAssignment& coin() const { return coin_; }
  const std::optional<StepPhase>& phase() const { return phase_; }
  /// e^{i phi sigma(c)} per coin index; all ones without a phase.
  std::span<const Amplitude> step_phases() const { return step_phases_; }

 private:
  SpacePtr space_;
  CoinAssignment coin_;
  std::optional<StepPhase> phase_;
  std::vector<Amplitude> step_phases_;
};

WalkState apply_coin(const WalkSpec& spec, const WalkState& state);
/// Moves component c of x to x.c, times the step phase of c. Exact zeros are
/// not moved.
WalkState apply_step(const WalkSpec& spec, const WalkState& state);
/// (SC)^n state. Throws kInvalidParameter for n < 0.
WalkState evolve(const WalkSpec& spec, const WalkState& state, std::int64_t n);
/// States after 0, 1, ..., n steps.
std::vector<WalkState> evolve_trajectory(const WalkSpec& spec, const WalkState& state,
                                         std::int64_t n);

/// The same evolution computed site by site from the recurrence
///   alpha_x(t+1) = sum_c Pi_c C_{c^-1(x)} alpha_{c^-1(x)}(t),
/// pulling from preimages instead of pushing through the coin kernel.
WalkState evolve_recurrence(const WalkSpec& spec, const WalkState& state, std::int64_t n);

/// Moves the step phases into the coin: C''_x = D_phi C_x, plain step.
WalkSpec absorb_phase_into_coin(const WalkSpec& spec);

/// Dense U = SC for a finite space; basis index = position_index * d + c with
/// positions in enumerate() order. Row-major, size (|X| d)^2.
std::vector<Amplitude> dense_evolution_matrix(const WalkSpec& spec);
std::vector<Amplitude> to_dense(const WalkState& state);
WalkState from_dense(const SpacePtr& space, std::span<const Amplitude> vector);

}  // namespace qwproj

#endif  // QWPROJ_WALK_HPP_
