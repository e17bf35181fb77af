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

#include "corpsched/binning.hpp"

#include <algorithm>
#include <charconv>

#include "corpsched/error.hpp"
#include "text_util.hpp"

namespace corpsched {

BinSpec::BinSpec(std::vector<FeatureValue> thresholds) : thresholds_(std::move(thresholds)) {
  for (std::size_t i = 1; i < thresholds_.size(); ++i) {
    if (thresholds_[i] <= thresholds_[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "thresholds must be strictly ascending: " + ToString());
    }
  }
}

BinSpec BinSpec::Parse(std::string_view text) {
  std::vector<FeatureValue> values;
  for (std::string_view item : detail::SplitOn(text, ',')) {
    while (!item.empty() && detail::IsSpace(item.front())) item.remove_prefix(1);
    while (!item.empty() && detail::IsSpace(item.back())) item.remove_suffix(1);
    FeatureValue v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw Error(ErrorCode::kInvalidArgument, "bad threshold list '" + std::string(text) + "'");
    }
    values.push_back(v);
  }
  return BinSpec(std::move(values));
}

BinSpec BinSpec::LengthDefault() { return BinSpec({8, 12, 16, 20, 40}); }

std::uint32_t BinSpec::BinOf(FeatureValue value) const {
  const auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), value);
  return static_cast<std::uint32_t>(it - thresholds_.begin()) + 1;
}

std::string BinSpec::ToString() const {
  if (thresholds_.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(thresholds_[i]);
  }
  return out;
}

BinAssignment Assign(const FeatureVector& values, const BinSpec& spec) {
  BinAssignment assignment;
  assignment.bin_of.reserve(values.size());
  assignment.sizes.assign(spec.num_bins(), 0);
  for (FeatureValue v : values.values) {
    const std::uint32_t bin = spec.BinOf(v);
    assignment.bin_of.push_back(bin);
    ++assignment.sizes[bin - 1];
  }
  assignment.feature = values.name.empty() ? "none" : values.name;
  assignment.thresholds = spec.ToString();
  return assignment;
}

BinAssignment AssignmentFromBins(std::vector<std::uint32_t> bin_of, std::uint32_t num_bins) {
  BinAssignment assignment;
  assignment.sizes.assign(num_bins, 0);
  for (std::uint32_t bin : bin_of) {
    if (bin == 0 || bin > num_bins) {
      throw Error(ErrorCode::kInvalidArgument,
                  "bin " + std::to_string(bin) + " outside 1.." + std::to_string(num_bins));
    }
    ++assignment.sizes[bin - 1];
  }
  assignment.bin_of = std::move(bin_of);
  return assignment;
}

MonotoneReport ValidateMonotone(std::span<const std::size_t> sizes) {
  MonotoneReport report;
  report.sizes.assign(sizes.begin(), sizes.end());
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] > sizes[i - 1]) {
      report.ok = false;
      report.first_violation = static_cast<std::uint32_t>(i + 1);
      break;
    }
  }
  return report;
}

MonotoneReport ValidateMonotone(const BinAssignment& assignment) {
  return ValidateMonotone(assignment.sizes);
}

std::vector<std::size_t> SurvivingThresholds(std::span<const std::size_t> sizes) {
  // sizes has one more entry than there are thresholds; threshold k sits
  // between merged[k] and merged[k + 1].
  std::vector<std::size_t> merged(sizes.begin(), sizes.end());
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) kept.push_back(k);
  for (;;) {
    const MonotoneReport report = ValidateMonotone(merged);
    if (report.ok) break;
    const std::size_t bin = *report.first_violation - 1;  // 0-based, >= 1
    merged[bin - 1] += merged[bin];
    merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(bin));
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(bin - 1));
  }
  return kept;
}

BinSpec AdjustThresholds(const FeatureVector& values, const BinSpec& spec) {
  const BinAssignment assignment = Assign(values, spec);
  std::vector<FeatureValue> thresholds;
  for (std::size_t k : SurvivingThresholds(assignment.sizes)) {
    thresholds.push_back(spec.thresholds()[k]);
  }
  return BinSpec(std::move(thresholds));
}

}  // namespace corpsched
