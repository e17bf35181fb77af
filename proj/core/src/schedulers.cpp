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

#include "corpsched/schedulers.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "corpsched/error.hpp"
#include "corpsched/rng.hpp"

namespace corpsched {

namespace {

void CheckSizes(std::size_t n, std::size_t batch_size) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "cannot schedule an empty corpus");
  if (batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  if (n - 1 > std::numeric_limits<ExampleId>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "corpus exceeds the example id range");
  }
}

std::vector<ExampleId> Identity(std::size_t n) {
  std::vector<ExampleId> ids(n);
  std::iota(ids.begin(), ids.end(), ExampleId{0});
  return ids;
}

void RequireMonotone(const BinAssignment& assignment) {
  const MonotoneReport report = ValidateMonotone(assignment);
  if (!report.ok) {
    std::string sizes;
    for (std::size_t s : report.sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
    throw Error(ErrorCode::kNonMonotoneBins,
                "bin " + std::to_string(*report.first_violation) +
                    " is larger than its predecessor (sizes " + sizes +
                    "); adjust the thresholds");
  }
}

Schedule BucketByKeys(std::span<const std::uint32_t> keys, std::size_t batch_size,
                      std::uint64_t seed, ScheduleMeta meta) {
  CheckSizes(keys.size(), batch_size);

  std::vector<std::uint32_t> labels(keys.begin(), keys.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  // Counting sort of ids by bucket keeps members in id order.
  std::vector<std::size_t> start(labels.size() + 1, 0);
  std::vector<std::uint32_t> bucket_index(keys.size());
  for (std::size_t id = 0; id < keys.size(); ++id) {
    const auto b = static_cast<std::uint32_t>(
        std::lower_bound(labels.begin(), labels.end(), keys[id]) - labels.begin());
    bucket_index[id] = b;
    ++start[b + 1];
  }
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<ExampleId> members(keys.size());
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t id = 0; id < keys.size(); ++id) {
      members[fill[bucket_index[id]]++] = static_cast<ExampleId>(id);
    }
  }

  struct Group {
    std::size_t begin;
    std::size_t size;
    std::uint32_t label;
  };
  std::vector<Group> groups;
  Rng rng(seed);
  for (std::size_t b = 0; b < labels.size(); ++b) {
    std::span<ExampleId> bucket(members.data() + start[b], start[b + 1] - start[b]);
    rng.Shuffle(bucket);
    for (std::size_t off = 0; off < bucket.size(); off += batch_size) {
      groups.push_back({start[b] + off, std::min(batch_size, bucket.size() - off), labels[b]});
    }
  }
  rng.Shuffle(std::span<Group>(groups));

  Schedule schedule(std::move(meta));
  for (const Group& g : groups) {
    schedule.AddBatch(std::span<const ExampleId>(members.data() + g.begin, g.size),
                      Annotation::Bucket(g.label));
  }
  return schedule;
}

}  // namespace

Schedule ShuffleSchedule(std::size_t n, std::size_t batch_size, std::uint64_t seed) {
  CheckSizes(n, batch_size);
  std::vector<ExampleId> ids = Identity(n);
  Rng rng(seed);
  rng.Shuffle(std::span<ExampleId>(ids));
  ScheduleMeta meta;
  meta.strategy = Strategy::kShuffle;
  meta.batch_size = batch_size;
  meta.seed = seed;
  meta.n = n;
  return Schedule::FromStream(std::move(meta), std::move(ids));
}

Schedule SortedSchedule(const FeatureVector& values, std::size_t batch_size, bool ascending) {
  CheckSizes(values.size(), batch_size);
  std::vector<ExampleId> ids = Identity(values.size());
  std::stable_sort(ids.begin(), ids.end(),
                   [&](ExampleId a, ExampleId b) { return values[a] < values[b]; });
  if (!ascending) std::reverse(ids.begin(), ids.end());
  ScheduleMeta meta;
  meta.strategy = Strategy::kSorted;
  meta.batch_size = batch_size;
  meta.n = values.size();
  meta.feature = values.name.empty() ? "none" : values.name;
  meta.descending = !ascending;
  return Schedule::FromStream(std::move(meta), std::move(ids));
}

Schedule BucketSchedule(const BinAssignment& assignment, std::size_t batch_size,
                        std::uint64_t seed) {
  ScheduleMeta meta;
  meta.strategy = Strategy::kBucket;
  meta.batch_size = batch_size;
  meta.seed = seed;
  meta.n = assignment.num_examples();
  meta.feature = assignment.feature;
  meta.thresholds = assignment.thresholds;
  return BucketByKeys(assignment.bin_of, batch_size, seed, std::move(meta));
}

Schedule BucketScheduleByValue(const FeatureVector& values, std::size_t batch_size,
                               std::uint64_t seed) {
  ScheduleMeta meta;
  meta.strategy = Strategy::kBucket;
  meta.batch_size = batch_size;
  meta.seed = seed;
  meta.n = values.size();
  meta.feature = values.name.empty() ? "none" : values.name;
  meta.thresholds = "exact";
  return BucketByKeys(values.values, batch_size, seed, std::move(meta));
}

std::vector<std::size_t> CurriculumPhaseLengths(std::span<const std::size_t> sizes) {
  std::vector<std::size_t> lengths(sizes.size());
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    const std::size_t next = j + 1 < sizes.size() ? sizes[j + 1] : 0;
    lengths[j] = (j + 1) * (sizes[j] - next);
  }
  return lengths;
}

CurriculumStream BuildCurriculumStream(const BinAssignment& assignment, std::uint64_t seed) {
  RequireMonotone(assignment);
  const std::size_t n = assignment.num_examples();
  const std::size_t k = assignment.num_bins();

  // Members of each bin in id order, packed bin after bin.
  std::vector<std::size_t> start(k + 1, 0);
  for (std::size_t b = 0; b < k; ++b) start[b + 1] = start[b] + assignment.sizes[b];
  if (start[k] != n) {
    throw Error(ErrorCode::kInvalidArgument, "bin sizes do not sum to the number of examples");
  }
  std::vector<ExampleId> members(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t id = 0; id < n; ++id) {
      members[fill[assignment.bin_of[id] - 1]++] = static_cast<ExampleId>(id);
    }
  }

  Rng rng(seed);
  for (std::size_t b = 0; b < k; ++b) {
    rng.Shuffle(std::span<ExampleId>(members.data() + start[b], assignment.sizes[b]));
  }

  CurriculumStream stream;
  stream.ids.reserve(n);
  stream.phase.reserve(n);
  std::vector<std::size_t> cursor(start.begin(), start.end() - 1);
  std::vector<ExampleId> pool;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t next = j + 1 < k ? assignment.sizes[j + 1] : 0;
    const std::size_t quota = assignment.sizes[j] - next;
    if (quota == 0) continue;
    pool.clear();
    for (std::size_t b = 0; b <= j; ++b) {
      pool.insert(pool.end(), members.begin() + static_cast<std::ptrdiff_t>(cursor[b]),
                  members.begin() + static_cast<std::ptrdiff_t>(cursor[b] + quota));
      cursor[b] += quota;
    }
    rng.Shuffle(std::span<ExampleId>(pool));
    stream.ids.insert(stream.ids.end(), pool.begin(), pool.end());
    stream.phase.insert(stream.phase.end(), pool.size(), static_cast<std::uint32_t>(j + 1));
  }
  return stream;
}

namespace {

ScheduleMeta CurriculumMeta(const BinAssignment& assignment, Strategy strategy,
                            std::size_t batch_size, std::uint64_t seed) {
  ScheduleMeta meta;
  meta.strategy = strategy;
  meta.batch_size = batch_size;
  meta.seed = seed;
  meta.n = assignment.num_examples();
  meta.feature = assignment.feature;
  meta.thresholds = assignment.thresholds;
  return meta;
}

}  // namespace

Schedule CurriculumSchedule(const BinAssignment& assignment, std::size_t batch_size,
                            std::uint64_t seed) {
  CheckSizes(assignment.num_examples(), batch_size);
  CurriculumStream stream = BuildCurriculumStream(assignment, seed);
  return Schedule::FromStream(
      CurriculumMeta(assignment, Strategy::kCurriculum, batch_size, seed),
      std::move(stream.ids), stream.phase);
}

Schedule ReversedCurriculumSchedule(const BinAssignment& assignment, std::size_t batch_size,
                                    std::uint64_t seed) {
  CheckSizes(assignment.num_examples(), batch_size);
  CurriculumStream stream = BuildCurriculumStream(assignment, seed);
  std::reverse(stream.ids.begin(), stream.ids.end());
  std::reverse(stream.phase.begin(), stream.phase.end());
  return Schedule::FromStream(
      CurriculumMeta(assignment, Strategy::kReverseCurriculum, batch_size, seed),
      std::move(stream.ids), stream.phase);
}

Schedule ContinuationSchedule(const Schedule& first_epoch, ContinuationMode mode,
                              std::uint64_t seed, const BinAssignment* assignment) {
  const ScheduleMeta& first = first_epoch.meta();
  const std::size_t n = first.n;
  std::vector<bool> seen(n, false);
  bool valid = first_epoch.num_examples() == n && n > 0;
  for (ExampleId id : first_epoch.flattened()) {
    if (!valid) break;
    if (id >= n || seen[id]) valid = false;
    else seen[id] = true;
  }
  if (!valid) {
    throw Error(ErrorCode::kInvalidSchedule,
                "first epoch does not cover 0.." + std::to_string(n == 0 ? 0 : n - 1) +
                    " exactly once");
  }

  Schedule next;
  if (mode == ContinuationMode::kShuffled) {
    next = ShuffleSchedule(n, first.batch_size, seed);
  } else {
    if (assignment == nullptr) {
      throw Error(ErrorCode::kMissingResource, "restarting a curriculum needs the bin assignment");
    }
    if (assignment->num_examples() != n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bin assignment covers " + std::to_string(assignment->num_examples()) +
                      " examples, first epoch has " + std::to_string(n));
    }
    next = CurriculumSchedule(*assignment, first.batch_size, seed);
  }
  next.mutable_meta().epoch = first.epoch + 1;
  return next;
}

}  // namespace corpsched
