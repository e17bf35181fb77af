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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corpsched/features.hpp"

namespace corpsched::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kPrecondition = 3 };

/// Where per-example feature values come from: a corpus (streamed) or a
/// precomputed feature file.
struct FeatureInputs {
  std::string src;
  std::string tgt;
  std::string src_tags;
  std::string tgt_tags;
  std::string tag_sep = "|";
  std::string features_file;
  std::string feature;
  std::string ranks;
  std::string src_ranks;
  std::string tgt_ranks;
  std::string lexicon;
  std::string tag_prefix;

  bool has_corpus() const { return !src.empty() || !tgt.empty(); }
};

struct RanksOptions {
  std::string src, tgt, scope = "tgt", out;
  std::size_t block_size = kDefaultRankBlockSize;
};

struct FeaturesOptions {
  FeatureInputs inputs;
  std::string out;
};

struct ScheduleOptions {
  FeatureInputs inputs;
  std::string strategy;
  std::string thresholds;
  std::size_t batch_size = 64;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  bool auto_adjust = false;
  bool descending = false;
  std::string continue_from;
  std::string mode = "restart-curriculum";
  std::string out;
};

struct AnalyzeOptions {
  FeatureInputs inputs;
  std::string schedule;
  std::string thresholds;
  std::string lengths_file;
  std::string waste_side = "tgt";
  std::string json_out = "-";
  std::string curve_out;
  bool per_batch = false;
};

struct ReorderOptions {
  std::string schedule, src, tgt, out_src, out_tgt;
};

struct BpeLearnOptions {
  std::string src, tgt, out;
  std::size_t size = 30000;
};

struct BpeApplyOptions {
  std::string merges, in = "-", out = "-";
};

struct BpeDecodeOptions {
  std::string in = "-", out = "-";
};

/// Streams of the running process; "-" as a path means `out` / `in`.
struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

int RunRanks(const RanksOptions& opts, Io io);
int RunFeatures(const FeaturesOptions& opts, Io io);
int RunSchedule(const ScheduleOptions& opts, Io io);
int RunAnalyze(const AnalyzeOptions& opts, Io io);
int RunReorder(const ReorderOptions& opts, Io io);
int RunBpeLearn(const BpeLearnOptions& opts, Io io);
int RunBpeApply(const BpeApplyOptions& opts, Io io);
int RunBpeDecode(const BpeDecodeOptions& opts, Io io);

/// Resolves `inputs` into a feature vector. `fallback_feature` names the
/// feature when `inputs.feature` is empty.
FeatureVector LoadFeature(const FeatureInputs& inputs, const std::string& fallback_feature = "");

/// Full command line (argv[0] excluded). Reads the JSON config named by
/// `--config` or the CORPSCHED_CONFIG environment variable; its flat keys
/// fill flags not given on the command line.
int Main(const std::vector<std::string>& args, Io io);

}  // namespace corpsched::cli
