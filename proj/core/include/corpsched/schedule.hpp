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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpsched/types.hpp"

namespace corpsched {

enum class Strategy { kShuffle, kBucket, kCurriculum, kReverseCurriculum, kSorted };

std::string_view StrategyName(Strategy strategy);
Strategy ParseStrategy(std::string_view name);

/// Per-batch tag: the bucket a homogeneous batch was cut from, or the
/// curriculum phase of the batch's first example.
struct Annotation {
  enum class Kind : std::uint8_t { kNone, kBucket, kPhase };
  Kind kind = Kind::kNone;
  std::uint32_t value = 0;

  static Annotation Bucket(std::uint32_t label) { return {Kind::kBucket, label}; }
  static Annotation Phase(std::uint32_t phase) { return {Kind::kPhase, phase}; }

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct ScheduleMeta {
  Strategy strategy = Strategy::kShuffle;
  std::size_t batch_size = 0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string feature = "none";
  std::string thresholds = "none";
  std::uint32_t epoch = 1;
  bool descending = false;

  friend bool operator==(const ScheduleMeta&, const ScheduleMeta&) = default;
};

/// An epoch of minibatches over example ids. Batches are stored as one
/// flattened id stream plus batch offsets, so a 10M-example schedule costs
/// about 4 bytes per example.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(ScheduleMeta meta) : meta_(std::move(meta)) {}

  /// Cuts `stream` sequentially into batches of meta.batch_size; the final
  /// batch may be underfull. `phase_of_position` (optional) gives the phase
  /// annotation for each stream position.
  static Schedule FromStream(ScheduleMeta meta, std::vector<ExampleId> stream,
                             std::span<const std::uint32_t> phase_of_position = {});

  void AddBatch(std::span<const ExampleId> ids, Annotation annotation = {});

  const ScheduleMeta& meta() const { return meta_; }
  ScheduleMeta& mutable_meta() { return meta_; }

  std::size_t num_batches() const { return offsets_.size() - 1; }
  std::size_t num_examples() const { return ids_.size(); }
  std::span<const ExampleId> batch(std::size_t b) const {
    return {ids_.data() + offsets_[b], offsets_[b + 1] - offsets_[b]};
  }
  Annotation annotation(std::size_t b) const { return annotations_[b]; }
  std::span<const ExampleId> flattened() const { return ids_; }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  ScheduleMeta meta_;
  std::vector<ExampleId> ids_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Annotation> annotations_;
};

/// Text format: `#key=value` header lines (strategy, batch_size, seed, n,
/// feature, thresholds, epoch; `order=descending` for descending sorted
/// schedules) followed by one batch per line as space-separated ids,
/// optionally suffixed with `\t@bucket=<v>` or `\t@phase=<j>`.
void WriteSchedule(std::ostream& out, const Schedule& schedule);
void WriteScheduleFile(const std::filesystem::path& path, const Schedule& schedule);
std::string ScheduleToString(const Schedule& schedule);

Schedule ReadSchedule(std::istream& in);
Schedule ReadScheduleFile(const std::filesystem::path& path);

}  // namespace corpsched
