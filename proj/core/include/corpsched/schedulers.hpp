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
#include <span>
#include <vector>

#include "corpsched/binning.hpp"
#include "corpsched/features.hpp"
#include "corpsched/schedule.hpp"

namespace corpsched {

inline constexpr std::size_t kDefaultBatchSize = 64;

// Every scheduler below returns a one-epoch schedule whose flattened ids are
// a permutation of 0..n-1, and every batch holds between 1 and batch_size
// ids. All randomness comes from one Rng(seed) consumed in a fixed order, so
// equal inputs give byte-identical schedules.

/// Seeded Fisher-Yates permutation of 0..n-1 cut into batches.
Schedule ShuffleSchedule(std::size_t n, std::size_t batch_size, std::uint64_t seed);

/// Ids stably sorted by (value, id); descending reverses that stream.
Schedule SortedSchedule(const FeatureVector& values, std::size_t batch_size,
                        bool ascending = true);

/// Homogeneous minibatches. Buckets are visited in ascending label order;
/// each bucket's ids are shuffled and cut into groups of batch_size (the
/// last one may be underfull), then all groups are shuffled together and
/// concatenated. Batches carry their bucket label.
Schedule BucketSchedule(const BinAssignment& assignment, std::size_t batch_size,
                        std::uint64_t seed);

/// BucketSchedule with one bucket per distinct raw feature value.
Schedule BucketScheduleByValue(const FeatureVector& values, std::size_t batch_size,
                               std::uint64_t seed);

/// Exactly-once curriculum stream over bins of nonincreasing size
/// s_1 >= ... >= s_k. Phase j draws s_j - s_{j+1} examples (s_{k+1} = 0)
/// from each of bins 1..j, so at the end of phase j every active bin has
/// s_{j+1} examples left. Draws are without replacement: each bin is
/// shuffled once (bins in order), then consumed front to back; each phase's
/// examples are shuffled together before they are appended.
struct CurriculumStream {
  std::vector<ExampleId> ids;
  /// Phase (1-based) of each stream position.
  std::vector<std::uint32_t> phase;
};

CurriculumStream BuildCurriculumStream(const BinAssignment& assignment, std::uint64_t seed);

/// Length of each phase: j * (s_j - s_{j+1}).
std::vector<std::size_t> CurriculumPhaseLengths(std::span<const std::size_t> sizes);

/// Cuts the curriculum stream into batches (batches may straddle phases)
/// and tags each batch with the phase of its first example. Throws
/// NonMonotoneBins if bin sizes increase anywhere.
Schedule CurriculumSchedule(const BinAssignment& assignment, std::size_t batch_size,
                            std::uint64_t seed);

/// The curriculum stream played back to front, then cut into batches.
Schedule ReversedCurriculumSchedule(const BinAssignment& assignment, std::size_t batch_size,
                                    std::uint64_t seed);

enum class ContinuationMode { kRestartCurriculum, kShuffled };

/// Second-epoch schedule after `first_epoch`: a fresh curriculum (needs the
/// bin assignment) or a plain shuffle, drawn with `seed`. The epoch counter
/// is the first epoch's plus one.
Schedule ContinuationSchedule(const Schedule& first_epoch, ContinuationMode mode,
                              std::uint64_t seed, const BinAssignment* assignment = nullptr);

}  // namespace corpsched
