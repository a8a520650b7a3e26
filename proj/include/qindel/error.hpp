// Copyright 2026 The qindel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qindel {

enum class ErrorCode {
  NonSquare,
  ShapeMismatch,
  NotHermitian,
  NoConvergence,
  TraceNotOne,
  NotPSD,
  NotNormalized,
  DigitOutOfRange,
  PositionOutOfRange,
  CountOutOfRange,
  NotAPermutation,
  InvalidIndexSet,
  BlockConstraintViolated,
  RoundTripFailed,
  SizeCapExceeded,
  LevelMismatch,
  TooFewStates,
  WeightOutOfRange,
  DegenerateParam,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. `residual` carries the numeric
/// violation when the failure is a tolerance check (e.g. how far a trace is
/// from one).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<double> residual = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> residual() const noexcept { return residual_; }
  /// The message without the code prefix and residual suffix of what().
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<double> residual_;
  std::string detail_;
};

}  // namespace qindel
