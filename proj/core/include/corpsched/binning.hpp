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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpsched/features.hpp"
#include "corpsched/types.hpp"

namespace corpsched {

/// Inclusive upper bounds t_1 < ... < t_m. Bin i (1-based) holds values
/// v <= t_i not in an earlier bin; bin m+1 holds v > t_m.
class BinSpec {
 public:
  /// Throws InvalidArgument unless thresholds are strictly ascending. An
  /// empty list is a single open bin (what AdjustThresholds can reduce to).
  explicit BinSpec(std::vector<FeatureValue> thresholds);

  /// Comma-separated list, e.g. "8,12,16,20,40". Needs at least one value.
  static BinSpec Parse(std::string_view text);

  /// The length bins 8,12,16,20,40 used for curricula by sentence length.
  static BinSpec LengthDefault();

  const std::vector<FeatureValue>& thresholds() const { return thresholds_; }
  std::uint32_t num_bins() const { return static_cast<std::uint32_t>(thresholds_.size() + 1); }
  std::uint32_t BinOf(FeatureValue value) const;
  std::string ToString() const;

  friend bool operator==(const BinSpec&, const BinSpec&) = default;

 private:
  std::vector<FeatureValue> thresholds_;
};

struct BinAssignment {
  /// bin_of[id] in 1..num_bins(); 1 is the easiest bin.
  std::vector<std::uint32_t> bin_of;
  /// sizes[i - 1] = number of examples in bin i.
  std::vector<std::size_t> sizes;
  /// Provenance echoed into schedule headers.
  std::string feature = "none";
  std::string thresholds = "none";

  std::uint32_t num_bins() const { return static_cast<std::uint32_t>(sizes.size()); }
  std::size_t num_examples() const { return bin_of.size(); }
};

BinAssignment Assign(const FeatureVector& values, const BinSpec& spec);

/// Builds an assignment from explicit bin indices (1-based); sizes are
/// counted over 1..num_bins.
BinAssignment AssignmentFromBins(std::vector<std::uint32_t> bin_of, std::uint32_t num_bins);

struct MonotoneReport {
  bool ok = true;
  std::vector<std::size_t> sizes;
  /// First bin (1-based) that is larger than its predecessor.
  std::optional<std::uint32_t> first_violation;
};

MonotoneReport ValidateMonotone(std::span<const std::size_t> sizes);
MonotoneReport ValidateMonotone(const BinAssignment& assignment);

/// Removes thresholds until bin sizes are nonincreasing. Each pass finds the
/// first bin larger than its predecessor and drops the threshold between
/// the two, merging it into the predecessor. Monotone inputs come back
/// unchanged.
BinSpec AdjustThresholds(const FeatureVector& values, const BinSpec& spec);

/// The same greedy merge applied to a size vector; returns the indices
/// (0-based) of the thresholds that survive.
std::vector<std::size_t> SurvivingThresholds(std::span<const std::size_t> sizes);

}  // namespace corpsched
