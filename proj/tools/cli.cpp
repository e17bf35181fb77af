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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "corpsched/error.hpp"

namespace corpsched::cli {

namespace {

constexpr const char* kConfigEnv = "CORPSCHED_CONFIG";

const CLI::Validator kPositiveInteger(
    [](std::string& value) -> std::string {
      const bool digits = !value.empty() && value.find_first_not_of("0123456789") == std::string::npos;
      if (!digits || value.find_first_not_of('0') == std::string::npos) {
        return "must be a positive integer, got '" + value + "'";
      }
      return {};
    },
    "POSITIVE");

void AddFeatureInputs(CLI::App* cmd, FeatureInputs& in) {
  cmd->add_option("--src", in.src, "Source side, one sentence per line");
  cmd->add_option("--tgt", in.tgt, "Target side, line-aligned with --src");
  cmd->add_option("--src-tags", in.src_tags, "POS-tagged source (token<sep>tag items)");
  cmd->add_option("--tgt-tags", in.tgt_tags, "POS-tagged target (token<sep>tag items)");
  cmd->add_option("--tag-sep", in.tag_sep, "Separator between token and tag");
  cmd->add_option("--features", in.features_file, "Precomputed feature file instead of a corpus");
  cmd->add_option("--feature", in.feature,
                  "src-length, tgt-length, [src-|tgt-]{conj,nouns,proper-nouns,verbs}, "
                  "{src,tgt,max,combined}-rank");
  cmd->add_option("--ranks", in.ranks, "Rank table for src-, tgt- or combined-rank");
  cmd->add_option("--src-ranks", in.src_ranks, "Source rank table for max-rank");
  cmd->add_option("--tgt-ranks", in.tgt_ranks, "Target rank table for max-rank");
  cmd->add_option("--lexicon", in.lexicon, "Surface forms to count, one per line");
  cmd->add_option("--tag-prefix", in.tag_prefix, "Count tags starting with this prefix");
}

/// Splits out `--config FILE` / `--config=FILE`; returns the config path.
std::string ExtractConfigPath(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr) path = env;
  }
  return path;
}

std::string ConfigValue(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!joined.empty()) joined += ',';
      joined += ConfigValue(item);
    }
    return joined;
  }
  return value.dump();
}

/// Turns flat config keys into `--key value` arguments for the selected
/// (innermost) subcommand. They go before the user's own arguments and
/// every option keeps its last value, so command-line flags win. Keys the
/// subcommand does not define are skipped, so one file can serve several
/// commands.
std::vector<std::string> ConfigArguments(const std::string& path, CLI::App& app,
                                         const std::vector<std::string>& args,
                                         std::size_t& insert_at) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path + "'");
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, "config '" + path + "': " + e.what());
  }
  if (!config.is_object()) throw Error(ErrorCode::kParse, "config must be a JSON object");

  CLI::App* cmd = &app;
  insert_at = 0;
  while (insert_at < args.size()) {
    CLI::App* sub = nullptr;
    try {
      sub = cmd->get_subcommand(args[insert_at]);
    } catch (const CLI::OptionNotFound&) {
      break;
    }
    cmd = sub;
    ++insert_at;
  }

  std::vector<std::string> injected;
  for (const auto& [key, value] : config.items()) {
    const CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) continue;
    if (opt->get_expected_max() == 0) {
      if (value.is_boolean() && value.get<bool>()) injected.push_back("--" + key);
      continue;
    }
    injected.push_back("--" + key);
    injected.push_back(ConfigValue(value));
  }
  return injected;
}

int ExitCodeFor(const Error& e) {
  switch (Classify(e.code())) {
    case ErrorClass::kUsage: return kUsage;
    case ErrorClass::kPrecondition: return kPrecondition;
    case ErrorClass::kData: return kDataError;
  }
  return kDataError;
}

}  // namespace

int Main(const std::vector<std::string>& raw_args, Io io) {
  CLI::App app{"Deterministic minibatch schedules for parallel corpora", "corpsched"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  RanksOptions ranks;
  auto* ranks_cmd = app.add_subcommand("ranks", "Build a frequency-rank block table");
  ranks_cmd->add_option("--src", ranks.src, "Source side")->required();
  ranks_cmd->add_option("--tgt", ranks.tgt, "Target side")->required();
  ranks_cmd->add_option("--scope", ranks.scope, "src, tgt or combined")
      ->check(CLI::IsMember({"src", "tgt", "combined"}));
  ranks_cmd->add_option("--block-size", ranks.block_size, "Words per rank block")
      ->check(kPositiveInteger);
  ranks_cmd->add_option("--out", ranks.out, "Output table ('-' for stdout)")->required();

  FeaturesOptions features;
  auto* features_cmd = app.add_subcommand("features", "Extract one feature per example");
  AddFeatureInputs(features_cmd, features.inputs);
  features_cmd->add_option("--out", features.out, "Output feature file ('-' for stdout)")
      ->required();

  ScheduleOptions schedule;
  auto* schedule_cmd = app.add_subcommand("schedule", "Write a one-epoch minibatch schedule");
  AddFeatureInputs(schedule_cmd, schedule.inputs);
  schedule_cmd->add_option("--strategy", schedule.strategy,
                           "shuffle, bucket, curriculum, reverse-curriculum or sorted");
  schedule_cmd->add_option("--thresholds", schedule.thresholds,
                           "Comma-separated inclusive bin bounds (default 8,12,16,20,40); "
                           "'exact' buckets by raw value");
  schedule_cmd->add_option("--batch-size", schedule.batch_size, "Examples per batch")
      ->check(kPositiveInteger);
  schedule_cmd->add_option("--seed", schedule.seed, "64-bit seed");
  schedule_cmd->add_option("--n", schedule.n, "Corpus size for shuffle without inputs");
  schedule_cmd->add_flag("--auto-adjust", schedule.auto_adjust,
                         "Merge bins until sizes are nonincreasing");
  schedule_cmd->add_flag("--descending", schedule.descending, "Sort descending (sorted)");
  schedule_cmd->add_option("--continue-from", schedule.continue_from,
                           "Previous epoch's schedule; writes the next epoch");
  schedule_cmd->add_option("--mode", schedule.mode, "restart-curriculum or shuffled")
      ->check(CLI::IsMember({"restart-curriculum", "shuffled"}));
  schedule_cmd->add_option("--out", schedule.out, "Output schedule ('-' for stdout)")->required();

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Audit a schedule");
  analyze_cmd->add_option("--schedule", analyze.schedule, "Schedule file")->required();
  AddFeatureInputs(analyze_cmd, analyze.inputs);
  analyze_cmd->add_option("--thresholds", analyze.thresholds,
                          "Bins for homogeneity/phases (default: schedule header)");
  analyze_cmd->add_option("--lengths", analyze.lengths_file, "Length feature file for padding");
  analyze_cmd->add_option("--waste-side", analyze.waste_side, "src or tgt lengths for padding")
      ->check(CLI::IsMember({"src", "tgt"}));
  analyze_cmd->add_option("--json", analyze.json_out, "JSON report ('-' for stdout)");
  analyze_cmd->add_option("--curve", analyze.curve_out, "Complexity curve CSV");
  analyze_cmd->add_flag("--per-batch", analyze.per_batch, "Include per-batch arrays in JSON");

  ReorderOptions reorder;
  auto* reorder_cmd = app.add_subcommand("reorder", "Write the corpus in schedule order");
  reorder_cmd->add_option("--schedule", reorder.schedule, "Schedule file")->required();
  reorder_cmd->add_option("--src", reorder.src, "Source side")->required();
  reorder_cmd->add_option("--tgt", reorder.tgt, "Target side")->required();
  reorder_cmd->add_option("--out-src", reorder.out_src, "Reordered source")->required();
  reorder_cmd->add_option("--out-tgt", reorder.out_tgt, "Reordered target")->required();

  auto* bpe_cmd = app.add_subcommand("bpe", "Joint byte-pair encoding");
  bpe_cmd->require_subcommand(1);
  BpeLearnOptions bpe_learn;
  auto* learn_cmd = bpe_cmd->add_subcommand("learn", "Learn merges over both sides");
  learn_cmd->add_option("--src", bpe_learn.src, "Source side")->required();
  learn_cmd->add_option("--tgt", bpe_learn.tgt, "Target side")->required();
  learn_cmd->add_option("--size", bpe_learn.size, "Target vocabulary size")
      ->check(kPositiveInteger);
  learn_cmd->add_option("--out", bpe_learn.out, "Merges file ('-' for stdout)")->required();
  BpeApplyOptions bpe_apply;
  auto* apply_cmd = bpe_cmd->add_subcommand("apply", "Segment text with learned merges");
  apply_cmd->add_option("--merges", bpe_apply.merges, "Merges file")->required();
  apply_cmd->add_option("--in", bpe_apply.in, "Input text ('-' for stdin)");
  apply_cmd->add_option("--out", bpe_apply.out, "Output text ('-' for stdout)");
  BpeDecodeOptions bpe_decode;
  auto* decode_cmd = bpe_cmd->add_subcommand("decode", "Undo segmentation");
  decode_cmd->add_option("--in", bpe_decode.in, "Segmented text ('-' for stdin)");
  decode_cmd->add_option("--out", bpe_decode.out, "Output text ('-' for stdout)");

  try {
    std::vector<std::string> args = raw_args;
    const std::string config_path = ExtractConfigPath(args);
    if (!config_path.empty()) {
      std::size_t insert_at = 0;
      std::vector<std::string> injected = ConfigArguments(config_path, app, args, insert_at);
      args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), injected.begin(),
                  injected.end());
    }
    // CLI11 consumes arguments from the back.
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    io.out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "corpsched: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    io.err << "corpsched: " << e.what() << '\n';
    return ExitCodeFor(e);
  }

  try {
    if (*ranks_cmd) return RunRanks(ranks, io);
    if (*features_cmd) return RunFeatures(features, io);
    if (*schedule_cmd) return RunSchedule(schedule, io);
    if (*analyze_cmd) return RunAnalyze(analyze, io);
    if (*reorder_cmd) return RunReorder(reorder, io);
    if (*learn_cmd) return RunBpeLearn(bpe_learn, io);
    if (*apply_cmd) return RunBpeApply(bpe_apply, io);
    if (*decode_cmd) return RunBpeDecode(bpe_decode, io);
  } catch (const Error& e) {
    io.err << "corpsched: " << e.what() << '\n';
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    io.err << "corpsched: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace corpsched::cli
