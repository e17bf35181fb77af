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

#include "corpsched/schedule.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "corpsched/error.hpp"
#include "text_util.hpp"

namespace corpsched {

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kShuffle: return "shuffle";
    case Strategy::kBucket: return "bucket";
    case Strategy::kCurriculum: return "curriculum";
    case Strategy::kReverseCurriculum: return "reverse-curriculum";
    case Strategy::kSorted: return "sorted";
  }
  return "unknown";
}

Strategy ParseStrategy(std::string_view name) {
  for (auto s : {Strategy::kShuffle, Strategy::kBucket, Strategy::kCurriculum,
                 Strategy::kReverseCurriculum, Strategy::kSorted}) {
    if (StrategyName(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown strategy '" + std::string(name) +
                  "' (expected shuffle, bucket, curriculum, reverse-curriculum or sorted)");
}

Schedule Schedule::FromStream(ScheduleMeta meta, std::vector<ExampleId> stream,
                              std::span<const std::uint32_t> phase_of_position) {
  const std::size_t batch_size = meta.batch_size;
  if (batch_size == 0) throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  if (!phase_of_position.empty() && phase_of_position.size() != stream.size()) {
    throw Error(ErrorCode::kInvalidArgument, "phase annotations do not cover the stream");
  }
  Schedule schedule(std::move(meta));
  const std::size_t n_batches = (stream.size() + batch_size - 1) / batch_size;
  schedule.offsets_.reserve(n_batches + 1);
  schedule.annotations_.reserve(n_batches);
  for (std::size_t start = 0; start < stream.size(); start += batch_size) {
    schedule.offsets_.push_back(std::min(start + batch_size, stream.size()));
    schedule.annotations_.push_back(phase_of_position.empty()
                                        ? Annotation{}
                                        : Annotation::Phase(phase_of_position[start]));
  }
  schedule.ids_ = std::move(stream);
  return schedule;
}

void Schedule::AddBatch(std::span<const ExampleId> ids, Annotation annotation) {
  if (ids.empty()) throw Error(ErrorCode::kInvalidSchedule, "empty batch");
  ids_.insert(ids_.end(), ids.begin(), ids.end());
  offsets_.push_back(ids_.size());
  annotations_.push_back(annotation);
}

namespace {

void AppendNumber(std::string& buf, std::uint64_t value) {
  char tmp[24];
  auto [end, ec] = std::to_chars(tmp, tmp + sizeof(tmp), value);
  buf.append(tmp, end);
}

}  // namespace

void WriteSchedule(std::ostream& out, const Schedule& schedule) {
  const ScheduleMeta& meta = schedule.meta();
  std::string buf;
  buf.reserve(1 << 16);
  buf += "#strategy=";
  buf += StrategyName(meta.strategy);
  buf += "\n#batch_size=";
  AppendNumber(buf, meta.batch_size);
  buf += "\n#seed=";
  AppendNumber(buf, meta.seed);
  buf += "\n#n=";
  AppendNumber(buf, meta.n);
  buf += "\n#feature=" + meta.feature;
  buf += "\n#thresholds=" + meta.thresholds;
  buf += "\n#epoch=";
  AppendNumber(buf, meta.epoch);
  buf += '\n';
  if (meta.descending) buf += "#order=descending\n";

  for (std::size_t b = 0; b < schedule.num_batches(); ++b) {
    bool first = true;
    for (ExampleId id : schedule.batch(b)) {
      if (!first) buf += ' ';
      first = false;
      AppendNumber(buf, id);
    }
    const Annotation a = schedule.annotation(b);
    if (a.kind == Annotation::Kind::kBucket) {
      buf += "\t@bucket=";
      AppendNumber(buf, a.value);
    } else if (a.kind == Annotation::Kind::kPhase) {
      buf += "\t@phase=";
      AppendNumber(buf, a.value);
    }
    buf += '\n';
    if (buf.size() > (1 << 16)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void WriteScheduleFile(const std::filesystem::path& path, const Schedule& schedule) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  WriteSchedule(out, schedule);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

std::string ScheduleToString(const Schedule& schedule) {
  std::ostringstream out;
  WriteSchedule(out, schedule);
  return out.str();
}

namespace {

template <typename T>
T ParseHeaderNumber(std::string_view value, std::size_t line_no) {
  T result{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kParse, "schedule line " + std::to_string(line_no) +
                                       ": bad number '" + std::string(value) + "'");
  }
  return result;
}

Annotation ParseAnnotation(std::string_view text, std::size_t line_no) {
  if (text.starts_with("@bucket=")) {
    return Annotation::Bucket(ParseHeaderNumber<std::uint32_t>(text.substr(8), line_no));
  }
  if (text.starts_with("@phase=")) {
    return Annotation::Phase(ParseHeaderNumber<std::uint32_t>(text.substr(7), line_no));
  }
  throw Error(ErrorCode::kParse, "schedule line " + std::to_string(line_no) +
                                     ": bad annotation '" + std::string(text) + "'");
}

}  // namespace

Schedule ReadSchedule(std::istream& in) {
  ScheduleMeta meta;
  Schedule schedule;
  bool in_body = false;
  std::vector<ExampleId> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (view.starts_with("#")) {
      if (in_body) {
        throw Error(ErrorCode::kParse,
                    "schedule line " + std::to_string(line_no) + ": header after batches");
      }
      const auto eq = view.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string_view key = view.substr(1, eq - 1);
      const std::string_view value = view.substr(eq + 1);
      if (key == "strategy") {
        meta.strategy = ParseStrategy(value);
      } else if (key == "batch_size") {
        meta.batch_size = ParseHeaderNumber<std::size_t>(value, line_no);
      } else if (key == "seed") {
        meta.seed = ParseHeaderNumber<std::uint64_t>(value, line_no);
      } else if (key == "n") {
        meta.n = ParseHeaderNumber<std::size_t>(value, line_no);
      } else if (key == "feature") {
        meta.feature = std::string(value);
      } else if (key == "thresholds") {
        meta.thresholds = std::string(value);
      } else if (key == "epoch") {
        meta.epoch = ParseHeaderNumber<std::uint32_t>(value, line_no);
      } else if (key == "order") {
        meta.descending = value == "descending";
      }
      continue;
    }
    if (!in_body) {
      schedule = Schedule(meta);
      in_body = true;
    }
    Annotation annotation;
    const auto tab = view.find('\t');
    if (tab != std::string_view::npos) {
      annotation = ParseAnnotation(view.substr(tab + 1), line_no);
      view = view.substr(0, tab);
    }
    ids.clear();
    for (std::string_view token : detail::SplitWhitespace(view)) {
      ids.push_back(ParseHeaderNumber<ExampleId>(token, line_no));
    }
    if (ids.empty()) {
      throw Error(ErrorCode::kParse, "schedule line " + std::to_string(line_no) + ": empty batch");
    }
    schedule.AddBatch(ids, annotation);
  }
  if (!in_body) schedule = Schedule(meta);
  return schedule;
}

Schedule ReadScheduleFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open schedule '" + path.string() + "'");
  return ReadSchedule(in);
}

}  // namespace corpsched
