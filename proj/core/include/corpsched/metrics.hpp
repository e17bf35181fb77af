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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpsched/binning.hpp"
#include "corpsched/schedule.hpp"
#include "corpsched/types.hpp"

namespace corpsched {

struct CoverageReport {
  bool ok = true;
  /// Ids appearing more than once, each listed once, ascending.
  std::vector<ExampleId> duplicates;
  /// Ids in 0..n-1 never scheduled, ascending.
  std::vector<ExampleId> missing;
  /// Scheduled ids >= n, ascending, each listed once.
  std::vector<ExampleId> out_of_range;
};

/// Exact set audit of the flattened schedule against 0..n-1.
CoverageReport CoverageAudit(const Schedule& schedule, std::size_t n);

struct PaddingWaste {
  /// sum(max - l) / (|b| * max) per batch.
  std::vector<double> per_batch;
  double mean = 0.0;
  /// sum over batches of padding / sum over batches of |b| * max.
  double token_weighted = 0.0;
};

PaddingWaste ComputePaddingWaste(const Schedule& schedule, std::span<const FeatureValue> lengths);

/// Fraction of batches whose members all share one key.
double BatchHomogeneity(const Schedule& schedule, std::span<const std::uint32_t> key_of);

struct CurvePoint {
  std::size_t batch = 0;
  double mean = 0.0;
};

std::vector<CurvePoint> ComplexityCurve(const Schedule& schedule,
                                        std::span<const FeatureValue> values);

/// `batch,mean` header then one row per batch. Means use the shortest form
/// that parses back exactly. `headers` go first as `#key=value` lines, which
/// the reader skips.
void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve,
                   std::span<const std::pair<std::string, std::string>> headers = {});
std::vector<CurvePoint> ReadCurveCsv(std::istream& in);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either side is constant or there are fewer than two points.
double SpearmanRho(std::span<const double> x, std::span<const double> y);

/// Batch index vs. batch mean trend of a complexity curve.
double CurveTrend(std::span<const CurvePoint> curve);

struct PhaseReport {
  /// counts[j][i]: examples of bin i+1 in phase j+1.
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> bin_sizes;
  /// Batches whose phase tag differs from the phase of their first example.
  std::size_t annotation_mismatches = 0;
  /// True iff counts[j][i] == s_j - s_{j+1} for i <= j and 0 otherwise.
  bool matches_rule = false;
};

/// Per-phase, per-bin composition of a (reversed) curriculum schedule.
/// Phase boundaries follow from the bin sizes (phase j spans
/// j * (s_j - s_{j+1}) stream positions, mirrored for reverse-curriculum);
/// the report counts which bins the scheduled ids at those positions
/// actually belong to. Throws MissingPhaseAnnotations unless every batch
/// carries a phase tag.
PhaseReport ComputePhaseReport(const Schedule& schedule, const BinAssignment& assignment);

struct ScheduleReport {
  CoverageReport coverage;
  std::size_t n_batches = 0;
  /// Batches smaller than the schedule's batch size.
  std::size_t n_underfull = 0;
  std::optional<double> homogeneity;
  std::optional<PaddingWaste> padding;
  std::vector<CurvePoint> progression;
  std::optional<double> progression_trend;
  std::optional<PhaseReport> phases;
};

std::size_t CountUnderfull(const Schedule& schedule);

/// JSON document for a report; per-batch arrays are omitted unless
/// `include_per_batch` is set.
nlohmann::json ReportToJson(const Schedule& schedule, const ScheduleReport& report,
                            bool include_per_batch = false);

}  // namespace corpsched
