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

#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>

#include "corpsched/corpsched.hpp"

namespace corpsched::cli {

namespace {

void WithOutput(const std::string& path, Io io, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) throw Error(ErrorCode::kInvalidArgument, "no output path given");
  if (path == "-") {
    write(io.out);
    io.out.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

void WithInput(const std::string& path, Io io, const std::function<void(std::istream&)>& read) {
  if (path == "-") {
    read(io.in);
    return;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  read(in);
}

TagFiles MakeTagFiles(const FeatureInputs& inputs) {
  TagFiles tags;
  if (!inputs.src_tags.empty()) tags.src = inputs.src_tags;
  if (!inputs.tgt_tags.empty()) tags.tgt = inputs.tgt_tags;
  tags.separator = inputs.tag_sep;
  return tags;
}

void RequireCorpus(const std::string& src, const std::string& tgt) {
  if (src.empty() || tgt.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "both --src and --tgt are required");
  }
}

std::string CanonicalFeatureName(const std::string& name) {
  try {
    return FeatureName(ParseFeature(name));
  } catch (const Error&) {
    return name;
  }
}

std::string Join(const std::vector<std::string>& tokens) {
  std::string line;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) line += ' ';
    line += tokens[i];
  }
  return line;
}

BinAssignment AssignChecked(const FeatureVector& values, const std::string& thresholds,
                            bool auto_adjust) {
  BinSpec spec = BinSpec::Parse(thresholds);
  BinAssignment assignment = Assign(values, spec);
  const MonotoneReport report = ValidateMonotone(assignment);
  if (report.ok) return assignment;
  if (!auto_adjust) {
    std::string sizes;
    for (std::size_t s : report.sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);
    throw Error(ErrorCode::kNonMonotoneBins,
                "bin sizes " + sizes + " increase at bin " +
                    std::to_string(*report.first_violation) +
                    "; pass --auto-adjust or choose other thresholds");
  }
  return Assign(values, AdjustThresholds(values, spec));
}

const std::string kDefaultThresholds = "8,12,16,20,40";

}  // namespace

FeatureVector LoadFeature(const FeatureInputs& inputs, const std::string& fallback_feature) {
  const std::string name = inputs.feature.empty() ? fallback_feature : inputs.feature;
  if (!inputs.features_file.empty()) {
    FeatureVector values = ReadFeatureVectorFile(inputs.features_file);
    if (!name.empty() && !values.name.empty() &&
        CanonicalFeatureName(name) != CanonicalFeatureName(values.name)) {
      throw Error(ErrorCode::kInvalidArgument, "feature file holds '" + values.name +
                                                   "', not '" + name + "'");
    }
    if (values.name.empty()) values.name = name.empty() ? "none" : CanonicalFeatureName(name);
    return values;
  }
  if (!inputs.has_corpus()) {
    throw Error(ErrorCode::kInvalidArgument, "need --src/--tgt or --features");
  }
  RequireCorpus(inputs.src, inputs.tgt);
  if (name.empty()) throw Error(ErrorCode::kInvalidArgument, "--feature is required");

  FeatureKind kind = ParseFeature(name);
  FeatureResources resources;
  Lexicon lexicon;
  RankTable single, src_table, tgt_table;

  if (auto* f = std::get_if<CategoryFeature>(&kind)) {
    const bool side_tagged =
        f->side == Side::kSrc ? !inputs.src_tags.empty() : !inputs.tgt_tags.empty();
    if (!inputs.lexicon.empty()) {
      f->method = CountMethod::kLexicon;
      lexicon = Lexicon::FromFile(inputs.lexicon);
    } else if (!inputs.tag_prefix.empty()) {
      f->method = CountMethod::kTagPrefix;
      f->tag_prefix = inputs.tag_prefix;
    } else if (f->category == Category::kConjunction) {
      if (side_tagged) {
        f->method = CountMethod::kTagPrefix;
      } else {
        lexicon = Lexicon::EnglishConjunctions();
      }
    }
    if (f->method == CountMethod::kLexicon) resources.lexicon = &lexicon;
  } else if (auto* f = std::get_if<RankFeature>(&kind)) {
    if (f->scope == RankScope::kMax) {
      if (inputs.src_ranks.empty() || inputs.tgt_ranks.empty()) {
        throw Error(ErrorCode::kMissingResource,
                    "max-rank needs --src-ranks and --tgt-ranks rank tables");
      }
      src_table = ReadRankTableFile(inputs.src_ranks);
      tgt_table = ReadRankTableFile(inputs.tgt_ranks);
      if (src_table.block_size() != tgt_table.block_size()) {
        throw Error(ErrorCode::kInvalidArgument, "source and target rank tables differ in block size");
      }
      f->block_size = src_table.block_size();
      resources.src_ranks = &src_table;
      resources.tgt_ranks = &tgt_table;
    } else {
      if (inputs.ranks.empty()) {
        throw Error(ErrorCode::kMissingResource,
                    FeatureName(kind) + " needs a rank table (--ranks)");
      }
      single = ReadRankTableFile(inputs.ranks);
      f->block_size = single.block_size();
      if (f->scope == RankScope::kSrc) resources.src_ranks = &single;
      if (f->scope == RankScope::kTgt) resources.tgt_ranks = &single;
      if (f->scope == RankScope::kCombined) resources.combined_ranks = &single;
    }
  }

  ParallelReader reader(inputs.src, inputs.tgt, MakeTagFiles(inputs));
  return ExtractStream(reader, kind, resources);
}

int RunRanks(const RanksOptions& opts, Io io) {
  RequireCorpus(opts.src, opts.tgt);
  RankScope scope;
  if (opts.scope == "src") {
    scope = RankScope::kSrc;
  } else if (opts.scope == "tgt") {
    scope = RankScope::kTgt;
  } else if (opts.scope == "combined") {
    scope = RankScope::kCombined;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "--scope must be src, tgt or combined (max uses two per-side tables)");
  }
  if (opts.block_size == 0) throw Error(ErrorCode::kInvalidArgument, "--block-size must be >= 1");

  WordCounts counts;
  ParallelReader reader(opts.src, opts.tgt);
  SentencePair pair;
  while (reader.Next(pair)) {
    if (scope != RankScope::kTgt) CountWords(pair.src_tokens, counts);
    if (scope != RankScope::kSrc) CountWords(pair.tgt_tokens, counts);
  }
  const RankTable table = RankTable::FromCounts(counts, opts.block_size);
  WithOutput(opts.out, io, [&](std::ostream& out) {
    out << "#scope=" << opts.scope << '\n';
    WriteRankTable(out, table);
  });
  return kOk;
}

int RunFeatures(const FeaturesOptions& opts, Io io) {
  if (opts.inputs.feature.empty()) throw Error(ErrorCode::kInvalidArgument, "--feature is required");
  const FeatureVector values = LoadFeature(opts.inputs);
  WithOutput(opts.out, io, [&](std::ostream& out) { WriteFeatureVector(out, values); });
  return kOk;
}

namespace {

std::size_t ResolveCount(const ScheduleOptions& opts) {
  if (opts.n > 0) return opts.n;
  const FeatureInputs& in = opts.inputs;
  if (!in.features_file.empty()) return ReadFeatureVectorFile(in.features_file).size();
  if (in.has_corpus()) {
    RequireCorpus(in.src, in.tgt);
    const std::size_t src = CountLines(in.src);
    const std::size_t tgt = CountLines(in.tgt);
    if (src != tgt) {
      throw Error(ErrorCode::kLineCountMismatch,
                  std::to_string(src) + " source lines vs " + std::to_string(tgt) + " target lines");
    }
    return src;
  }
  throw Error(ErrorCode::kInvalidArgument, "shuffle needs --n, --features or --src/--tgt");
}

Schedule BuildContinuation(const ScheduleOptions& opts) {
  const Schedule first = ReadScheduleFile(opts.continue_from);
  if (opts.mode == "shuffled") {
    return ContinuationSchedule(first, ContinuationMode::kShuffled, opts.seed);
  }
  if (opts.mode != "restart-curriculum") {
    throw Error(ErrorCode::kInvalidArgument,
                "--mode must be restart-curriculum or shuffled, got '" + opts.mode + "'");
  }
  const std::string feature =
      first.meta().feature == "none" ? std::string() : first.meta().feature;
  const std::string thresholds = !opts.thresholds.empty() ? opts.thresholds
                                 : first.meta().thresholds != "none" ? first.meta().thresholds
                                                                     : kDefaultThresholds;
  const FeatureVector values = LoadFeature(opts.inputs, feature);
  const BinAssignment assignment = AssignChecked(values, thresholds, opts.auto_adjust);
  return ContinuationSchedule(first, ContinuationMode::kRestartCurriculum, opts.seed, &assignment);
}

}  // namespace

int RunSchedule(const ScheduleOptions& opts, Io io) {
  if (opts.batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "--batch-size must be >= 1");
  Schedule schedule;
  if (!opts.continue_from.empty()) {
    schedule = BuildContinuation(opts);
  } else {
    if (opts.strategy.empty()) throw Error(ErrorCode::kInvalidArgument, "--strategy is required");
    const Strategy strategy = ParseStrategy(opts.strategy);
    const std::string thresholds = opts.thresholds.empty() ? kDefaultThresholds : opts.thresholds;
    switch (strategy) {
      case Strategy::kShuffle:
        schedule = ShuffleSchedule(ResolveCount(opts), opts.batch_size, opts.seed);
        break;
      case Strategy::kSorted:
        schedule = SortedSchedule(LoadFeature(opts.inputs, "tgt-length"), opts.batch_size,
                                  !opts.descending);
        break;
      case Strategy::kBucket: {
        const FeatureVector values = LoadFeature(opts.inputs, "tgt-length");
        schedule = thresholds == "exact"
                       ? BucketScheduleByValue(values, opts.batch_size, opts.seed)
                       : BucketSchedule(Assign(values, BinSpec::Parse(thresholds)),
                                        opts.batch_size, opts.seed);
        break;
      }
      case Strategy::kCurriculum:
      case Strategy::kReverseCurriculum: {
        const FeatureVector values = LoadFeature(opts.inputs, "tgt-length");
        const BinAssignment assignment = AssignChecked(values, thresholds, opts.auto_adjust);
        schedule = strategy == Strategy::kCurriculum
                       ? CurriculumSchedule(assignment, opts.batch_size, opts.seed)
                       : ReversedCurriculumSchedule(assignment, opts.batch_size, opts.seed);
        break;
      }
    }
  }
  WithOutput(opts.out, io, [&](std::ostream& out) { WriteSchedule(out, schedule); });
  return kOk;
}

int RunAnalyze(const AnalyzeOptions& opts, Io io) {
  if (opts.waste_side != "src" && opts.waste_side != "tgt") {
    throw Error(ErrorCode::kInvalidArgument, "--waste-side must be src or tgt");
  }
  const Schedule schedule = ReadScheduleFile(opts.schedule);
  const ScheduleMeta& meta = schedule.meta();

  ScheduleReport report;
  report.coverage = CoverageAudit(schedule, meta.n);
  report.n_batches = schedule.num_batches();
  report.n_underfull = CountUnderfull(schedule);

  const FeatureInputs& in = opts.inputs;
  const bool have_source = in.has_corpus() || !in.features_file.empty();
  const std::string feature =
      !in.feature.empty() ? in.feature : meta.feature != "none" ? meta.feature : "";

  std::optional<FeatureVector> values;
  if (have_source && (!feature.empty() || !in.features_file.empty())) {
    values = LoadFeature(in, feature);
  }

  std::optional<FeatureVector> lengths;
  if (!opts.lengths_file.empty()) {
    lengths = ReadFeatureVectorFile(opts.lengths_file);
  } else if (in.has_corpus()) {
    FeatureInputs length_inputs = in;
    length_inputs.features_file.clear();
    length_inputs.feature = opts.waste_side + "-length";
    lengths = LoadFeature(length_inputs);
  } else if (values && values->name.ends_with("-length")) {
    lengths = values;
  }
  if (lengths) report.padding = ComputePaddingWaste(schedule, lengths->values);

  const std::string thresholds =
      !opts.thresholds.empty() ? opts.thresholds : meta.thresholds != "none" ? meta.thresholds : "";
  std::optional<BinAssignment> assignment;
  if (values) {
    report.progression = ComplexityCurve(schedule, values->values);
    report.progression_trend = CurveTrend(report.progression);
    if (thresholds == "exact") {
      report.homogeneity = BatchHomogeneity(schedule, values->values);
    } else if (!thresholds.empty()) {
      assignment = Assign(*values, BinSpec::Parse(thresholds));
      report.homogeneity = BatchHomogeneity(schedule, assignment->bin_of);
    }
  }
  const bool curriculum = meta.strategy == Strategy::kCurriculum ||
                          meta.strategy == Strategy::kReverseCurriculum;
  if (curriculum && assignment) report.phases = ComputePhaseReport(schedule, *assignment);

  nlohmann::json doc = ReportToJson(schedule, report, opts.per_batch);
  bool ok = report.coverage.ok;
  doc["checks"]["coverage"] = report.coverage.ok;
  if (report.phases) {
    const bool phase_ok = report.phases->matches_rule && report.phases->annotation_mismatches == 0;
    doc["checks"]["phase_rule"] = phase_ok;
    ok = ok && phase_ok;
  }
  if (meta.strategy == Strategy::kBucket && report.homogeneity) {
    const bool homogeneous = *report.homogeneity == 1.0;
    doc["checks"]["homogeneous"] = homogeneous;
    ok = ok && homogeneous;
  }
  doc["ok"] = ok;

  WithOutput(opts.json_out, io, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
  if (!opts.curve_out.empty()) {
    if (!values) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--curve needs feature values (--src/--tgt or --features)");
    }
    const ScheduleMeta& meta = schedule.meta();
    const std::vector<std::pair<std::string, std::string>> headers = {
        {"strategy", std::string(StrategyName(meta.strategy))},
        {"batch_size", std::to_string(meta.batch_size)},
        {"seed", std::to_string(meta.seed)},
        {"n", std::to_string(meta.n)},
        {"epoch", std::to_string(meta.epoch)},
        {"feature", values->name},
    };
    WithOutput(opts.curve_out, io,
               [&](std::ostream& out) { WriteCurveCsv(out, report.progression, headers); });
  }
  if (!ok) {
    io.err << "analyze: schedule failed ";
    if (!report.coverage.ok) {
      io.err << "coverage (" << report.coverage.missing.size() << " missing, "
             << report.coverage.duplicates.size() << " duplicated, "
             << report.coverage.out_of_range.size() << " out of range)";
    } else {
      io.err << "structural checks";
    }
    io.err << '\n';
    return kDataError;
  }
  return kOk;
}

int RunReorder(const ReorderOptions& opts, Io) {
  RequireCorpus(opts.src, opts.tgt);
  if (opts.out_src.empty() || opts.out_tgt.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--out-src and --out-tgt are required");
  }
  const Schedule schedule = ReadScheduleFile(opts.schedule);
  ReorderFiles(opts.src, opts.tgt, schedule, opts.out_src, opts.out_tgt);
  return kOk;
}

int RunBpeLearn(const BpeLearnOptions& opts, Io io) {
  RequireCorpus(opts.src, opts.tgt);
  WordCounts counts;
  ParallelReader reader(opts.src, opts.tgt);
  SentencePair pair;
  while (reader.Next(pair)) {
    CountWords(pair.src_tokens, counts);
    CountWords(pair.tgt_tokens, counts);
  }
  const BpeModel model = LearnBpe(counts, opts.size);
  WithOutput(opts.out, io, [&](std::ostream& out) { WriteMerges(out, model); });
  return kOk;
}

int RunBpeApply(const BpeApplyOptions& opts, Io io) {
  BpeEncoder encoder(ReadMergesFile(opts.merges));
  WithInput(opts.in, io, [&](std::istream& in) {
    WithOutput(opts.out, io, [&](std::ostream& out) {
      std::string line;
      while (std::getline(in, line)) {
        out << Join(encoder.Apply(Tokenize(line))) << '\n';
      }
    });
  });
  return kOk;
}

int RunBpeDecode(const BpeDecodeOptions& opts, Io io) {
  WithInput(opts.in, io, [&](std::istream& in) {
    WithOutput(opts.out, io, [&](std::ostream& out) {
      std::string line;
      while (std::getline(in, line)) out << Join(DecodeBpe(Tokenize(line))) << '\n';
    });
  });
  return kOk;
}

}  // namespace corpsched::cli
