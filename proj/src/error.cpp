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

#include "qindel/error.hpp"

namespace qindel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::CountOutOfRange: return "CountOutOfRange";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::InvalidIndexSet: return "InvalidIndexSet";
    case ErrorCode::BlockConstraintViolated: return "BlockConstraintViolated";
    case ErrorCode::RoundTripFailed: return "RoundTripFailed";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::TooFewStates: return "TooFewStates";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::DegenerateParam: return "DegenerateParam";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& what, std::optional<double> residual) {
  std::string msg(to_string(code));
  msg += ": ";
  msg += what;
  if (residual) {
    msg += " (residual ";
    msg += std::to_string(*residual);
    msg += ")";
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& what, std::optional<double> residual)
    : std::runtime_error(format_message(code, what, residual)), code_(code), residual_(residual), detail_(what) {}

}  // namespace qindel
