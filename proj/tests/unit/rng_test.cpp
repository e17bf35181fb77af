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

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "corpsched/rng.hpp"

namespace corpsched {
namespace {

// The C++ standard pins the 10000th output of a default-seeded mt19937_64.
TEST(RngTest, EngineMatchesStandardReferenceValue) {
  Rng rng(5489);
  std::uint64_t value = 0;
  for (int i = 0; i < 10000; ++i) value = rng.Next();
  EXPECT_EQ(value, 9981545732273789042ULL);
}

TEST(RngTest, UniformBelowOneIsAlwaysZero) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(rng.UniformBelow(1), 0u);
}

TEST(RngTest, UniformBelowStaysInRange) {
  Rng rng(11);
  for (std::uint64_t bound : {2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
    for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.UniformBelow(bound), bound);
  }
}

// Re-derives the documented sampler straight from the raw engine.
TEST(RngTest, UniformBelowFollowsDocumentedRejectionRule) {
  Rng rng(99);
  std::mt19937_64 engine(99);
  const std::uint64_t bound = (1ULL << 63) + 1;  // rejects almost half of draws
  const std::uint64_t threshold = (0 - bound) % bound;
  for (int i = 0; i < 200; ++i) {
    std::uint64_t r = engine();
    while (r < threshold) r = engine();
    EXPECT_EQ(rng.UniformBelow(bound), r % bound);
  }
}

TEST(RngTest, ShuffleMatchesHandWrittenFisherYates) {
  std::vector<int> actual(10);
  std::iota(actual.begin(), actual.end(), 0);
  std::vector<int> expected = actual;

  Rng rng(42);
  rng.Shuffle(std::span<int>(actual));

  std::mt19937_64 engine(42);
  for (std::size_t i = expected.size() - 1; i >= 1; --i) {
    const std::uint64_t bound = i + 1;
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r = engine();
    while (r < threshold) r = engine();
    std::swap(expected[i], expected[r % bound]);
  }
  EXPECT_EQ(actual, expected);
}

TEST(RngTest, ShuffleOfEmptyAndSingletonIsNoOp) {
  Rng rng(1);
  std::vector<int> empty;
  rng.Shuffle(std::span<int>(empty));
  std::vector<int> one{7};
  rng.Shuffle(std::span<int>(one));
  EXPECT_EQ(one, std::vector<int>{7});
  // Neither call consumed randomness.
  Rng fresh(1);
  EXPECT_EQ(rng.Next(), fresh.Next());
}

// All 24 orderings of four items should be equally likely. Chi-square with
// 23 degrees of freedom; 60.0 is far beyond the 0.9999 quantile (~52.6).
TEST(RngTest, ShuffleIsUniformOverPermutations) {
  Rng rng(2024);
  std::map<std::array<int, 4>, int> counts;
  const int trials = 240000;
  for (int t = 0; t < trials; ++t) {
    std::array<int, 4> a{0, 1, 2, 3};
    rng.Shuffle(std::span<int>(a));
    ++counts[a];
  }
  ASSERT_EQ(counts.size(), 24u);
  const double expected = trials / 24.0;
  double chi2 = 0.0;
  for (const auto& [perm, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 60.0);
}

}  // namespace
}  // namespace corpsched
