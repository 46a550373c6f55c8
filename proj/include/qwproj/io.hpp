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

#ifndef QWPROJ_IO_HPP_
#define QWPROJ_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qwproj/catalog.hpp"
#include "qwproj/hilbert.hpp"
#include "qwproj/projection.hpp"
#include "qwproj/reconstruction.hpp"
#include "qwproj/spaces.hpp"
#include "qwproj/walk.hpp"

namespace qwproj::io {

using Json = nlohmann::ordered_json;

/// {"space": name, "support": [{"pos": [..], "coin": [[re, im], ..]}, ..]}
Json state_to_json(const WalkState& state);
/// Throws kInvalidFormat on malformed input or a space name mismatch.
WalkState state_from_json(const Json& json, const SpacePtr& space);

/// Coordinates then probability per support position, 17 significant digits,
/// LF line endings, preceded by a header row.
std::string distribution_csv(const WalkState& state);

Json commutation_report_json(const CommutationReport& report);

struct ReconstructionSummary {
  std::int64_t samples = 0;
  SigmaBounds bounds;
  std::optional<double> max_error;  // vs. the reference, when one was given
};
Json reconstruction_report_json(const ReconstructionSummary& summary, const WalkState& recovered);

/// {"space": "z1" | "z2" | "llattice"} or {"space": "circle", "n": N}.
SpacePtr space_from_descriptor(const Json& json);
/// {"rho": "lattice", "k", "l"}, {"rho": "mod", "n"}, {"rho": "llattice-diag"},
/// {"rho": "identity"}. The map's source must be compatible with `source`.
ProjectionMap projection_from_descriptor(const Json& json, const SpacePtr& source);
/// {"coin": "grover4" | "hadamard2"} or {"coin": "matrix", "rows": [[[re, im], ..], ..]}.
CoinMatrix coin_from_descriptor(const Json& json);

/// A scenario built from a config object:
///   {"space": {..}, "coin": {..}, "projection": {..}, "phi": 0.5 | "pi/3"}
/// "projection" and "phi" are optional.
ScenarioDescriptor scenario_from_config(const Json& json);

/// Radians in plain decimal or pi-fraction form: "1.0", "pi", "-pi/4",
/// "2pi/3", "2*pi/3", "3/4". Throws kInvalidFormat.
double parse_angle(std::string_view text);

/// printf("%.17g")
std::string format_double(double value);

}  // namespace qwproj::io

#endif  // QWPROJ_IO_HPP_
