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

#include "corpsched/corpus_io.hpp"

#include <cstdint>
#include <limits>

#include "corpsched/error.hpp"
#include "text_util.hpp"

namespace corpsched {

namespace {

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  return out;
}

std::string Where(const std::filesystem::path& path, std::size_t line_index) {
  return path.string() + ":" + std::to_string(line_index + 1);
}

Tokens CheckedTokens(std::string_view line, const std::filesystem::path& path,
                     std::size_t line_index) {
  if (!detail::IsValidUtf8(line)) {
    throw Error(ErrorCode::kInvalidUtf8, Where(path, line_index));
  }
  Tokens tokens = Tokenize(line);
  if (tokens.empty()) throw Error(ErrorCode::kEmptyLine, Where(path, line_index));
  return tokens;
}

Tokens CheckedTags(std::string_view line, std::string_view separator, std::size_t expected,
                   const std::filesystem::path& path, std::size_t line_index) {
  if (!detail::IsValidUtf8(line)) {
    throw Error(ErrorCode::kInvalidUtf8, Where(path, line_index));
  }
  auto items = [&] {
    try {
      return ParseTaggedLine(line, separator);
    } catch (const Error& e) {
      throw Error(e.code(), Where(path, line_index) + ": " + e.what());
    }
  }();
  if (items.size() != expected) {
    throw Error(ErrorCode::kTagArityMismatch,
                Where(path, line_index) + ": " + std::to_string(items.size()) +
                    " tagged items for " + std::to_string(expected) + " tokens");
  }
  Tokens tags;
  tags.reserve(items.size());
  for (auto& [token, tag] : items) tags.push_back(std::move(tag));
  return tags;
}

bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  return true;
}

void WriteJoined(std::string& buf, std::span<const std::string> tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) buf += ' ';
    buf += tokens[i];
  }
  buf += '\n';
}

}  // namespace

void ParallelCorpus::Add(Tokens src, Tokens tgt) {
  if (src.empty() || tgt.empty()) {
    throw Error(ErrorCode::kEmptyLine, "pair " + std::to_string(pairs_.size()));
  }
  if (pairs_.size() >= std::numeric_limits<ExampleId>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "corpus exceeds the example id range");
  }
  SentencePair pair;
  pair.id = static_cast<ExampleId>(pairs_.size());
  pair.src_tokens = std::move(src);
  pair.tgt_tokens = std::move(tgt);
  pairs_.push_back(std::move(pair));
}

void ParallelCorpus::AttachTags(Side side, std::vector<Tokens> tags) {
  if (tags.size() != pairs_.size()) {
    throw Error(ErrorCode::kLineCountMismatch, std::to_string(tags.size()) + " tag lines for " +
                                                   std::to_string(pairs_.size()) + " pairs");
  }
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (tags[i].size() != pairs_[i].tokens(side).size()) {
      throw Error(ErrorCode::kTagArityMismatch,
                  "pair " + std::to_string(i) + " " + std::string(SideName(side)) + ": " +
                      std::to_string(tags[i].size()) + " tags for " +
                      std::to_string(pairs_[i].tokens(side).size()) + " tokens");
    }
  }
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    auto& slot = side == Side::kSrc ? pairs_[i].src_tags : pairs_[i].tgt_tags;
    slot = std::move(tags[i]);
  }
  (side == Side::kSrc ? has_src_tags_ : has_tgt_tags_) = true;
}

Tokens Tokenize(std::string_view line) {
  Tokens tokens;
  for (std::string_view t : detail::SplitWhitespace(line)) tokens.emplace_back(t);
  return tokens;
}

std::vector<std::pair<std::string, std::string>> ParseTaggedLine(std::string_view line,
                                                                 std::string_view separator) {
  if (separator.empty()) throw Error(ErrorCode::kInvalidArgument, "empty tag separator");
  std::vector<std::pair<std::string, std::string>> items;
  for (std::string_view item : detail::SplitWhitespace(line)) {
    const auto pos = item.rfind(separator);
    if (pos == std::string_view::npos || pos == 0 || pos + separator.size() == item.size()) {
      throw Error(ErrorCode::kMalformedItem, "item '" + std::string(item) + "'");
    }
    items.emplace_back(std::string(item.substr(0, pos)),
                       std::string(item.substr(pos + separator.size())));
  }
  return items;
}

ParallelReader::ParallelReader(const std::filesystem::path& src_path,
                               const std::filesystem::path& tgt_path, TagFiles tags)
    : src_(OpenInput(src_path)),
      tgt_(OpenInput(tgt_path)),
      src_path_(src_path),
      tgt_path_(tgt_path),
      separator_(std::move(tags.separator)) {
  if (tags.src) src_tags_.emplace(OpenInput(*tags.src));
  if (tags.tgt) tgt_tags_.emplace(OpenInput(*tags.tgt));
  if ((tags.src || tags.tgt) && separator_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty tag separator");
  }
}

bool ParallelReader::has_tags(Side side) const {
  return side == Side::kSrc ? src_tags_.has_value() : tgt_tags_.has_value();
}

bool ParallelReader::Next(SentencePair& pair) {
  std::string tgt_line;
  const bool got_src = ReadLine(src_, line_);
  const bool got_tgt = ReadLine(tgt_, tgt_line);
  if (got_src != got_tgt) {
    throw Error(ErrorCode::kLineCountMismatch,
                (got_src ? tgt_path_ : src_path_).string() + " ends after " +
                    std::to_string(next_id_) + " lines");
  }
  const auto read_tags = [&](std::optional<std::ifstream>& stream, Side side) {
    if (!stream) return;
    std::string tag_line;
    const bool got = ReadLine(*stream, tag_line);
    if (got != got_src) {
      throw Error(ErrorCode::kLineCountMismatch,
                  std::string(SideName(side)) + " tag file is not aligned at line " +
                      std::to_string(next_id_ + 1));
    }
    if (!got) return;
    auto& slot = side == Side::kSrc ? pair.src_tags : pair.tgt_tags;
    slot = CheckedTags(tag_line, separator_, pair.tokens(side).size(),
                       std::string(SideName(side)) + " tags", next_id_);
  };
  if (!got_src) {
    read_tags(src_tags_, Side::kSrc);
    read_tags(tgt_tags_, Side::kTgt);
    return false;
  }
  if (next_id_ >= std::numeric_limits<ExampleId>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "corpus exceeds the example id range");
  }
  pair.id = static_cast<ExampleId>(next_id_);
  pair.src_tokens = CheckedTokens(line_, src_path_, next_id_);
  pair.tgt_tokens = CheckedTokens(tgt_line, tgt_path_, next_id_);
  pair.src_tags.reset();
  pair.tgt_tags.reset();
  read_tags(src_tags_, Side::kSrc);
  read_tags(tgt_tags_, Side::kTgt);
  ++next_id_;
  return true;
}

ParallelCorpus LoadParallel(const std::filesystem::path& src_path,
                            const std::filesystem::path& tgt_path) {
  ParallelReader reader(src_path, tgt_path);
  ParallelCorpus corpus;
  SentencePair pair;
  while (reader.Next(pair)) {
    corpus.Add(std::move(pair.src_tokens), std::move(pair.tgt_tokens));
  }
  return corpus;
}

ParallelCorpus LoadTagged(const std::filesystem::path& path, std::string_view separator,
                          Side side, ParallelCorpus corpus) {
  std::ifstream in = OpenInput(path);
  std::vector<Tokens> tags;
  tags.reserve(corpus.size());
  std::string line;
  while (ReadLine(in, line)) {
    const std::size_t index = tags.size();
    if (index >= corpus.size()) {
      throw Error(ErrorCode::kLineCountMismatch,
                  path.string() + " has more lines than the corpus (" +
                      std::to_string(corpus.size()) + ")");
    }
    tags.push_back(CheckedTags(line, separator, corpus[index].tokens(side).size(), path, index));
  }
  if (tags.size() != corpus.size()) {
    throw Error(ErrorCode::kLineCountMismatch, path.string() + " has " +
                                                   std::to_string(tags.size()) +
                                                   " lines, corpus has " +
                                                   std::to_string(corpus.size()));
  }
  corpus.AttachTags(side, std::move(tags));
  return corpus;
}

void WriteReordered(const ParallelCorpus& corpus, const Schedule& schedule,
                    const std::filesystem::path& out_src, const std::filesystem::path& out_tgt) {
  for (ExampleId id : schedule.flattened()) {
    if (id >= corpus.size()) {
      throw Error(ErrorCode::kUnknownId, "schedule references id " + std::to_string(id) +
                                             " but the corpus has " +
                                             std::to_string(corpus.size()) + " pairs");
    }
  }
  std::ofstream src = OpenOutput(out_src);
  std::ofstream tgt = OpenOutput(out_tgt);
  std::string src_buf, tgt_buf;
  for (ExampleId id : schedule.flattened()) {
    WriteJoined(src_buf, corpus[id].src_tokens);
    WriteJoined(tgt_buf, corpus[id].tgt_tokens);
    if (src_buf.size() + tgt_buf.size() > (1 << 20)) {
      src.write(src_buf.data(), static_cast<std::streamsize>(src_buf.size()));
      tgt.write(tgt_buf.data(), static_cast<std::streamsize>(tgt_buf.size()));
      src_buf.clear();
      tgt_buf.clear();
    }
  }
  src.write(src_buf.data(), static_cast<std::streamsize>(src_buf.size()));
  tgt.write(tgt_buf.data(), static_cast<std::streamsize>(tgt_buf.size()));
  if (!src || !tgt) throw Error(ErrorCode::kIo, "write failed");
}

namespace {

std::vector<std::uint64_t> IndexLineStarts(std::ifstream& in) {
  std::vector<std::uint64_t> starts;
  std::vector<char> buf(1 << 20);
  std::uint64_t pos = 0;
  bool at_line_start = true;
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) {
      if (at_line_start) {
        starts.push_back(pos + i);
        at_line_start = false;
      }
      if (buf[i] == '\n') at_line_start = true;
    }
    pos += got;
  }
  in.clear();
  return starts;
}

}  // namespace

void ReorderFiles(const std::filesystem::path& src_path, const std::filesystem::path& tgt_path,
                  const Schedule& schedule, const std::filesystem::path& out_src,
                  const std::filesystem::path& out_tgt) {
  std::ifstream src_in = OpenInput(src_path);
  std::ifstream tgt_in = OpenInput(tgt_path);
  const std::vector<std::uint64_t> src_starts = IndexLineStarts(src_in);
  const std::vector<std::uint64_t> tgt_starts = IndexLineStarts(tgt_in);
  if (src_starts.size() != tgt_starts.size()) {
    throw Error(ErrorCode::kLineCountMismatch,
                src_path.string() + " has " + std::to_string(src_starts.size()) + " lines, " +
                    tgt_path.string() + " has " + std::to_string(tgt_starts.size()));
  }
  const std::size_t n = src_starts.size();
  for (ExampleId id : schedule.flattened()) {
    if (id >= n) {
      throw Error(ErrorCode::kUnknownId, "schedule references id " + std::to_string(id) +
                                             " but the corpus has " + std::to_string(n) +
                                             " pairs");
    }
  }

  std::ofstream src_out = OpenOutput(out_src);
  std::ofstream tgt_out = OpenOutput(out_tgt);
  std::string line, src_buf, tgt_buf;
  const auto emit = [&](std::ifstream& in, const std::vector<std::uint64_t>& starts,
                        const std::filesystem::path& path, ExampleId id, std::string& buf) {
    in.seekg(static_cast<std::streamoff>(starts[id]));
    std::getline(in, line);
    WriteJoined(buf, CheckedTokens(line, path, id));
  };
  for (ExampleId id : schedule.flattened()) {
    emit(src_in, src_starts, src_path, id, src_buf);
    emit(tgt_in, tgt_starts, tgt_path, id, tgt_buf);
    if (src_buf.size() + tgt_buf.size() > (1 << 20)) {
      src_out.write(src_buf.data(), static_cast<std::streamsize>(src_buf.size()));
      tgt_out.write(tgt_buf.data(), static_cast<std::streamsize>(tgt_buf.size()));
      src_buf.clear();
      tgt_buf.clear();
    }
  }
  src_out.write(src_buf.data(), static_cast<std::streamsize>(src_buf.size()));
  tgt_out.write(tgt_buf.data(), static_cast<std::streamsize>(tgt_buf.size()));
  if (!src_out || !tgt_out) throw Error(ErrorCode::kIo, "write failed");
}

std::size_t CountLines(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  std::vector<char> buf(1 << 20);
  std::size_t lines = 0;
  char last = '\n';
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = static_cast<std::size_t>(in.gcount());
    for (std::size_t i = 0; i < got; ++i) lines += buf[i] == '\n';
    if (got > 0) last = buf[got - 1];
  }
  return lines + (last != '\n');
}

FilteredCorpus FilterByLength(const ParallelCorpus& corpus, std::size_t max_tokens) {
  FilteredCorpus result;
  std::vector<Tokens> src_tags, tgt_tags;
  for (const SentencePair& pair : corpus) {
    if (pair.src_tokens.size() > max_tokens || pair.tgt_tokens.size() > max_tokens) continue;
    result.origin.push_back(pair.id);
    result.corpus.Add(pair.src_tokens, pair.tgt_tokens);
    if (corpus.has_tags(Side::kSrc)) src_tags.push_back(*pair.src_tags);
    if (corpus.has_tags(Side::kTgt)) tgt_tags.push_back(*pair.tgt_tags);
  }
  if (corpus.has_tags(Side::kSrc)) result.corpus.AttachTags(Side::kSrc, std::move(src_tags));
  if (corpus.has_tags(Side::kTgt)) result.corpus.AttachTags(Side::kTgt, std::move(tgt_tags));
  return result;
}

}  // namespace corpsched
