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

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace corpsched {

/// Portable seeded generator used by every scheduler.
///
/// The engine is std::mt19937_64 seeded with the 64-bit seed directly; its
/// output sequence is fixed by the C++ standard. Bounded draws do not go
/// through std::uniform_int_distribution (whose algorithm is
/// implementation-defined) but through the rejection rule in UniformBelow,
/// so a schedule is the same on every platform and can be re-implemented in
/// any language that has MT19937-64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  /// Uniform integer in [0, bound). Draws r until r >= (2^64 - bound) mod
  /// bound, then returns r mod bound. bound must be >= 1.
  std::uint64_t UniformBelow(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  /// Fisher-Yates, walking i from size-1 down to 1 and swapping with
  /// UniformBelow(i + 1).
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(UniformBelow(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace corpsched
