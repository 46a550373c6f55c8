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

#include "qwproj/error.hpp"

namespace qwproj {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidPosition: return "InvalidPosition";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kUnknownDisplacement: return "UnknownDisplacement";
    case ErrorCode::kNotCoprime: return "NotCoprime";
    case ErrorCode::kInvalidModulus: return "InvalidModulus";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNonUnitary: return "NonUnitary";
    case ErrorCode::kMissingSigma: return "MissingSigma";
    case ErrorCode::kNullProjection: return "NullProjection";
    case ErrorCode::kInhomogeneousCoin: return "InhomogeneousCoin";
    case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
    case ErrorCode::kInconsistentGrid: return "InconsistentGrid";
    case ErrorCode::kUnknownScenario: return "UnknownScenario";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kSubspaceNotInvariant: return "SubspaceNotInvariant";
    case ErrorCode::kStateOutsideSubspace: return "StateOutsideSubspace";
    case ErrorCode::kInvalidFormat: return "InvalidFormat";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace qwproj
