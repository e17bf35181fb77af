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

#include <benchmark/benchmark.h>

#include <random>

#include "corpsched/binning.hpp"
#include "corpsched/metrics.hpp"
#include "corpsched/schedulers.hpp"

namespace corpsched {
namespace {

FeatureVector GeometricLengths(std::size_t n) {
  std::mt19937_64 gen(1);
  std::geometric_distribution<FeatureValue> dist(0.2);
  FeatureVector v{"tgt-length", std::vector<FeatureValue>(n)};
  for (auto& x : v.values) x = 1 + dist(gen);
  return v;
}

void BM_Shuffle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ShuffleSchedule(n, 64, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Shuffle)->Arg(1 << 16)->Arg(1 << 20);

void BM_Sorted(benchmark::State& state) {
  const FeatureVector v = GeometricLengths(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SortedSchedule(v, 64));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sorted)->Arg(1 << 20);

void BM_Bucket(benchmark::State& state) {
  const FeatureVector v = GeometricLengths(static_cast<std::size_t>(state.range(0)));
  const BinAssignment a = Assign(v, BinSpec::LengthDefault());
  for (auto _ : state) benchmark::DoNotOptimize(BucketSchedule(a, 64, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Bucket)->Arg(1 << 20);

void BM_Curriculum(benchmark::State& state) {
  const FeatureVector v = GeometricLengths(static_cast<std::size_t>(state.range(0)));
  const BinAssignment a = Assign(v, BinSpec::LengthDefault());
  for (auto _ : state) benchmark::DoNotOptimize(CurriculumSchedule(a, 64, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Curriculum)->Arg(1 << 16)->Arg(1 << 20);

void BM_CoverageAudit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Schedule s = ShuffleSchedule(n, 64, 7);
  for (auto _ : state) benchmark::DoNotOptimize(CoverageAudit(s, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoverageAudit)->Arg(1 << 20);

}  // namespace
}  // namespace corpsched
