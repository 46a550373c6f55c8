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

#ifndef QWPROJ_ERROR_HPP_
#define QWPROJ_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwproj {

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidPosition,
  kSpaceMismatch,
  kUnknownDisplacement,
  kNotCoprime,
  kInvalidModulus,
  kOverflow,
  kNonFinite,
  kNonUnitary,
  kMissingSigma,
  kNullProjection,
  kInhomogeneousCoin,
  kGridTooCoarse,
  kInconsistentGrid,
  kUnknownScenario,
  kInvalidParameter,
  kSubspaceNotInvariant,
  kStateOutsideSubspace,
  kInvalidFormat,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported as an Error carrying a
/// machine-checkable code; the message is for humans only.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qwproj

#endif  // QWPROJ_ERROR_HPP_
