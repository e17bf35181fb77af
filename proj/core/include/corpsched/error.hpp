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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace corpsched {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kLineCountMismatch,
  kEmptyLine,
  kInvalidUtf8,
  kTagArityMismatch,
  kMalformedItem,
  kUnknownId,
  kMissingTags,
  kMissingResource,
  kNonMonotoneBins,
  kTargetTooSmall,
  kDanglingContinuation,
  kMissingPhaseAnnotations,
  kInvalidSchedule,
};

std::string_view ErrorCodeName(ErrorCode code);

/// Coarse classification used by the command-line tools to pick exit codes.
enum class ErrorClass { kUsage, kData, kPrecondition };

ErrorClass Classify(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace corpsched
