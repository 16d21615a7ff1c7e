// Copyright 2026 The margindisc Authors
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

#include "margindisc/error.hpp"

namespace margindisc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidPriors: return "InvalidPriors";
    case ErrorCode::kNotProjective: return "NotProjective";
    case ErrorCode::kDegenerateDraw: return "DegenerateDraw";
    case ErrorCode::kAlignmentFailure: return "AlignmentFailure";
    case ErrorCode::kWitnessMismatch: return "WitnessMismatch";
    case ErrorCode::kCertificationFailure: return "CertificationFailure";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace margindisc
