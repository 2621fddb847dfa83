// Copyright 2026 The Coarse SBM Authors.
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

#include "coarse_sbm/errors.h"

namespace coarse_sbm {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kCapExceeded:
      return "CapExceeded";
    case ErrorCode::kDomainError:
      return "DomainError";
    case ErrorCode::kSizeCap:
      return "SizeCap";
    case ErrorCode::kInfeasible:
      return "Infeasible";
    case ErrorCode::kDivisibilityError:
      return "DivisibilityError";
    case ErrorCode::kPriorInvalid:
      return "PriorInvalid";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kDegenerateCase:
      return "DegenerateCase";
    case ErrorCode::kTooManyCommunities:
      return "TooManyCommunities";
    case ErrorCode::kUnclassifiableScaling:
      return "UnclassifiableScaling";
    case ErrorCode::kConfigError:
      return "ConfigError";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace coarse_sbm
