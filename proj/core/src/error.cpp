// Copyright 2026 The corpsched Authors.
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

#include "corpsched/error.hpp"

namespace corpsched {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kLineCountMismatch: return "LineCountMismatch";
    case ErrorCode::kEmptyLine: return "EmptyLine";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kTagArityMismatch: return "TagArityMismatch";
    case ErrorCode::kMalformedItem: return "MalformedItem";
    case ErrorCode::kUnknownId: return "UnknownId";
    case ErrorCode::kMissingTags: return "MissingTags";
    case ErrorCode::kMissingResource: return "MissingResource";
    case ErrorCode::kNonMonotoneBins: return "NonMonotoneBins";
    case ErrorCode::kTargetTooSmall: return "TargetTooSmall";
    case ErrorCode::kDanglingContinuation: return "DanglingContinuation";
    case ErrorCode::kMissingPhaseAnnotations: return "MissingPhaseAnnotations";
    case ErrorCode::kInvalidSchedule: return "InvalidSchedule";
  }
  return "Unknown";
}

ErrorClass Classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return ErrorClass::kUsage;
    case ErrorCode::kNonMonotoneBins:
    case ErrorCode::kTargetTooSmall:
    case ErrorCode::kMissingPhaseAnnotations:
      return ErrorClass::kPrecondition;
    default:
      return ErrorClass::kData;
  }
}

}  // namespace corpsched
