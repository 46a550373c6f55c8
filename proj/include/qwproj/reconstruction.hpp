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

#ifndef QWPROJ_RECONSTRUCTION_HPP_
#define QWPROJ_RECONSTRUCTION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qwproj/hilbert.hpp"
#include "qwproj/spaces.hpp"
#include "qwproj/walk.hpp"

namespace qwproj {

/// Inclusive sigma range.
struct SigmaBounds {
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::int64_t span() const { return max - min + 1; }
  friend bool operator==(const SigmaBounds&, const SigmaBounds&) = default;
};

/// Extent of sigma over the rows of `state`. Throws kMissingSigma and, for an
/// empty state, kInvalidParameter.
SigmaBounds sigma_support_bounds(const WalkState& state, const ProjectionMap& pmap);

/// A-priori bounds after n steps: every step moves sigma by sigma(c) for one
/// displacement c.
SigmaBounds reachable_sigma_bounds(const ProjectionMap& pmap, const WalkState& psi0,
                                   std::int64_t n);

/// Smallest odd grid size that covers `bounds`.
std::int64_t default_grid_size(SigmaBounds bounds);

/// The phase grid phi_j = 2 pi j / M, j = 0..M-1.
std::vector<double> phase_grid(std::int64_t samples);

class ReconstructionPlan {
 public:
  /// Throws kMissingSigma, kInvalidParameter, and kGridTooCoarse when the grid
  /// is smaller than the sigma range.
  ReconstructionPlan(ProjectionMap pmap, SigmaBounds bounds,
                     std::optional<std::int64_t> samples = std::nullopt);

  const ProjectionMap& pmap() const { return pmap_; }
  SigmaBounds bounds() const { return bounds_; }
  std::int64_t samples() const { return samples_; }
  const std::vector<double>& grid() const { return grid_; }

 private:
  ProjectionMap pmap_;
  SigmaBounds bounds_;
  std::int64_t samples_;
  std::vector<double> grid_;
};

/// (phi, projected state) pairs.
using PhaseFamily = std::vector<std::pair<double, WalkState>>;

/// $_{phi_j} of one source state for every grid phase.
PhaseFamily project_on_grid(const ReconstructionPlan& plan, const WalkState& source_state);

enum class PhaseConvention {
  kStepCarried,  // phases on the induced step
  kCoinAbsorbed  // C'' = D_phi C'
};

/// Evolves $_{phi_j} psi0 under the induced walk at every grid phase, one task
/// per phase.
PhaseFamily evolve_projection_family(const WalkSpec& walk, const ReconstructionPlan& plan,
                                     const WalkState& psi0, std::int64_t n,
                                     PhaseConvention convention = PhaseConvention::kStepCarried);

/// Inverts the phase family: for every target point r and s in `bounds`,
///   alpha_{unproject(r, s)} = (1/M) sum_j e^{-i s phi_j} beta_r(phi_j).
/// The projections may come in any order but must cover the uniform grid
/// exactly once. The sum over j is pairwise.
///
/// Throws kGridTooCoarse, kInconsistentGrid, kMissingSigma, kSpaceMismatch.
WalkState reconstruct(std::span<const std::pair<double, WalkState>> projections,
                      const ProjectionMap& pmap, SigmaBounds bounds);

}  // namespace qwproj

#endif  // QWPROJ_RECONSTRUCTION_HPP_
