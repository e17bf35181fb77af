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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace corpsched {

/// Dense example id; line number (0-based) in the parallel corpus.
using ExampleId = std::uint32_t;

/// Integer per-sentence feature value (length, count or rank block).
using FeatureValue = std::uint32_t;

enum class Side { kSrc, kTgt };

inline std::string_view SideName(Side side) {
  return side == Side::kSrc ? "src" : "tgt";
}

/// Transparent hash so string-keyed maps can be probed with string_view.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

}  // namespace corpsched
