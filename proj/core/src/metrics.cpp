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

#include "corpsched/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "corpsched/error.hpp"
#include "corpsched/schedulers.hpp"

namespace corpsched {

CoverageReport CoverageAudit(const Schedule& schedule, std::size_t n) {
  CoverageReport report;
  std::vector<std::uint8_t> seen(n, 0);
  for (ExampleId id : schedule.flattened()) {
    if (id >= n) {
      report.out_of_range.push_back(id);
      continue;
    }
    if (seen[id] < 2) ++seen[id];
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (seen[id] == 0) report.missing.push_back(static_cast<ExampleId>(id));
    if (seen[id] == 2) report.duplicates.push_back(static_cast<ExampleId>(id));
  }
  std::sort(report.out_of_range.begin(), report.out_of_range.end());
  report.out_of_range.erase(std::unique(report.out_of_range.begin(), report.out_of_range.end()),
                            report.out_of_range.end());
  report.ok = report.duplicates.empty() && report.missing.empty() && report.out_of_range.empty();
  return report;
}

namespace {

template <typename T>
void RequireCovered(const Schedule& schedule, std::span<const T> values, const char* what) {
  for (ExampleId id : schedule.flattened()) {
    if (id >= values.size()) {
      throw Error(ErrorCode::kUnknownId, "schedule id " + std::to_string(id) + " has no " +
                                             what + " (have " + std::to_string(values.size()) +
                                             ")");
    }
  }
}

}  // namespace

PaddingWaste ComputePaddingWaste(const Schedule& schedule, std::span<const FeatureValue> lengths) {
  RequireCovered(schedule, lengths, "length");
  PaddingWaste waste;
  waste.per_batch.reserve(schedule.num_batches());
  double padded_total = 0.0;
  double area_total = 0.0;
  for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
    const auto batch = schedule.batch(b);
    FeatureValue longest = 0;
    double sum = 0.0;
    for (ExampleId id : batch) {
      longest = std::max(longest, lengths[id]);
      sum += lengths[id];
    }
    const double area = static_cast<double>(batch.size()) * longest;
    const double padding = area - sum;
    waste.per_batch.push_back(area > 0.0 ? padding / area : 0.0);
    padded_total += padding;
    area_total += area;
  }
  if (!waste.per_batch.empty()) {
    waste.mean = std::accumulate(waste.per_batch.begin(), waste.per_batch.end(), 0.0) /
                 static_cast<double>(waste.per_batch.size());
  }
  waste.token_weighted = area_total > 0.0 ? padded_total / area_total : 0.0;
  return waste;
}

double BatchHomogeneity(const Schedule& schedule, std::span<const std::uint32_t> key_of) {
  RequireCovered(schedule, key_of, "bucket key");
  if (schedule.num_batches() == 0) return 1.0;
  std::size_t homogeneous = 0;
  for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
    const auto batch = schedule.batch(b);
    const std::uint32_t key = key_of[batch.front()];
    homogeneous += std::all_of(batch.begin(), batch.end(),
                               [&](ExampleId id) { return key_of[id] == key; });
  }
  return static_cast<double>(homogeneous) / static_cast<double>(schedule.num_batches());
}

std::vector<CurvePoint> ComplexityCurve(const Schedule& schedule,
                                        std::span<const FeatureValue> values) {
  RequireCovered(schedule, values, "feature value");
  std::vector<CurvePoint> curve;
  curve.reserve(schedule.num_batches());
  for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
    const auto batch = schedule.batch(b);
    double sum = 0.0;
    for (ExampleId id : batch) sum += values[id];
    curve.push_back({b, sum / static_cast<double>(batch.size())});
  }
  return curve;
}

void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve,
                   std::span<const std::pair<std::string, std::string>> headers) {
  std::string buf;
  for (const auto& [key, value] : headers) buf += '#' + key + '=' + value + '\n';
  buf += "batch,mean\n";
  char tmp[64];
  for (const CurvePoint& p : curve) {
    buf.append(tmp, std::to_chars(tmp, tmp + sizeof(tmp), p.batch).ptr);
    buf += ',';
    buf.append(tmp, std::to_chars(tmp, tmp + sizeof(tmp), p.mean).ptr);
    buf += '\n';
  }
  out << buf;
}

std::vector<CurvePoint> ReadCurveCsv(std::istream& in) {
  std::vector<CurvePoint> curve;
  std::string line;
  while (std::getline(in, line) && line.starts_with('#')) {
  }
  if (line != "batch,mean") {
    throw Error(ErrorCode::kParse, "curve CSV must start with 'batch,mean'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::kParse, "bad curve row '" + line + "'");
    CurvePoint p;
    const char* last = line.data() + line.size();
    auto r1 = std::from_chars(line.data(), line.data() + comma, p.batch);
    auto r2 = std::from_chars(line.data() + comma + 1, last, p.mean);
    if (r1.ec != std::errc{} || r1.ptr != line.data() + comma || r2.ec != std::errc{} ||
        r2.ptr != last) {
      throw Error(ErrorCode::kParse, "bad curve row '" + line + "'");
    }
    curve.push_back(p);
  }
  return curve;
}

namespace {

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double SpearmanRho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kInvalidArgument, "length mismatch");
  if (x.size() < 2) return 0.0;
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double CurveTrend(std::span<const CurvePoint> curve) {
  std::vector<double> index, mean;
  index.reserve(curve.size());
  mean.reserve(curve.size());
  for (const CurvePoint& p : curve) {
    index.push_back(static_cast<double>(p.batch));
    mean.push_back(p.mean);
  }
  return SpearmanRho(index, mean);
}

PhaseReport ComputePhaseReport(const Schedule& schedule, const BinAssignment& assignment) {
  if (schedule.num_batches() == 0) {
    throw Error(ErrorCode::kMissingPhaseAnnotations, "schedule has no batches");
  }
  for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
    if (schedule.annotation(b).kind != Annotation::Kind::kPhase) {
      throw Error(ErrorCode::kMissingPhaseAnnotations,
                  "batch " + std::to_string(b) + " has no phase tag");
    }
  }
  const MonotoneReport monotone = ValidateMonotone(assignment);
  if (!monotone.ok) {
    throw Error(ErrorCode::kNonMonotoneBins,
                "bin " + std::to_string(*monotone.first_violation) + " is larger than its predecessor");
  }
  const std::size_t k = assignment.num_bins();
  const std::vector<std::size_t> lengths = CurriculumPhaseLengths(assignment.sizes);

  // Phase of each stream position, in curriculum (forward) order.
  std::vector<std::uint32_t> phase_at;
  phase_at.reserve(assignment.num_examples());
  for (std::size_t j = 0; j < k; ++j) {
    phase_at.insert(phase_at.end(), lengths[j], static_cast<std::uint32_t>(j + 1));
  }
  if (schedule.meta().strategy == Strategy::kReverseCurriculum) {
    std::reverse(phase_at.begin(), phase_at.end());
  }

  PhaseReport report;
  report.bin_sizes = assignment.sizes;
  report.counts.assign(k, std::vector<std::size_t>(k, 0));
  const auto stream = schedule.flattened();
  const std::size_t covered = std::min(stream.size(), phase_at.size());
  for (std::size_t p = 0; p < covered; ++p) {
    const ExampleId id = stream[p];
    if (id >= assignment.num_examples()) {
      throw Error(ErrorCode::kUnknownId, "schedule id " + std::to_string(id) + " has no bin");
    }
    ++report.counts[phase_at[p] - 1][assignment.bin_of[id] - 1];
  }
  std::size_t position = 0;
  for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
    if (position >= covered || schedule.annotation(b).value != phase_at[position]) {
      ++report.annotation_mismatches;
    }
    position += schedule.batch(b).size();
  }

  report.matches_rule = stream.size() == phase_at.size();
  for (std::size_t j = 0; j < k && report.matches_rule; ++j) {
    const std::size_t quota = assignment.sizes[j] - (j + 1 < k ? assignment.sizes[j + 1] : 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (report.counts[j][i] != (i <= j ? quota : 0)) report.matches_rule = false;
    }
  }
  return report;
}

std::size_t CountUnderfull(const Schedule& schedule) {
  std::size_t underfull = 0;
  for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
    underfull += schedule.batch(b).size() < schedule.meta().batch_size;
  }
  return underfull;
}

nlohmann::json ReportToJson(const Schedule& schedule, const ScheduleReport& report,
                            bool include_per_batch) {
  using nlohmann::json;
  const ScheduleMeta& meta = schedule.meta();
  json doc;
  doc["schedule"] = {
      {"strategy", std::string(StrategyName(meta.strategy))},
      {"batch_size", meta.batch_size},
      {"seed", meta.seed},
      {"n", meta.n},
      {"feature", meta.feature},
      {"thresholds", meta.thresholds},
      {"epoch", meta.epoch},
  };
  doc["coverage"] = {
      {"ok", report.coverage.ok},
      {"duplicate_ids", report.coverage.duplicates},
      {"missing_ids", report.coverage.missing},
      {"out_of_range_ids", report.coverage.out_of_range},
  };
  doc["n_batches"] = report.n_batches;
  doc["n_underfull"] = report.n_underfull;
  doc["homogeneity"] = report.homogeneity ? json(*report.homogeneity) : json(nullptr);
  if (report.padding) {
    doc["padding_waste"] = {{"mean", report.padding->mean},
                            {"token_weighted", report.padding->token_weighted}};
    if (include_per_batch) doc["padding_waste"]["per_batch"] = report.padding->per_batch;
  } else {
    doc["padding_waste"] = nullptr;
  }
  doc["progression_trend"] =
      report.progression_trend ? json(*report.progression_trend) : json(nullptr);
  if (include_per_batch) {
    json curve = json::array();
    for (const CurvePoint& p : report.progression) curve.push_back(p.mean);
    doc["progression"] = std::move(curve);
  }
  if (report.phases) {
    json phases = json::array();
    for (std::size_t j = 0; j < report.phases->counts.size(); ++j) {
      phases.push_back({{"phase", j + 1}, {"bin_counts", report.phases->counts[j]}});
    }
    doc["phases"] = {{"bin_sizes", report.phases->bin_sizes},
                     {"per_phase", std::move(phases)},
                     {"annotation_mismatches", report.phases->annotation_mismatches},
                     {"matches_rule", report.phases->matches_rule}};
  } else {
    doc["phases"] = nullptr;
  }
  return doc;
}

}  // namespace corpsched
