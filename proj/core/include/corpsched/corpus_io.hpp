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

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpsched/schedule.hpp"
#include "corpsched/types.hpp"

namespace corpsched {

using Tokens = std::vector<std::string>;

struct SentencePair {
  ExampleId id = 0;
  Tokens src_tokens;
  Tokens tgt_tokens;
  std::optional<Tokens> src_tags;
  std::optional<Tokens> tgt_tags;

  const Tokens& tokens(Side side) const { return side == Side::kSrc ? src_tokens : tgt_tokens; }
  const std::optional<Tokens>& tags(Side side) const {
    return side == Side::kSrc ? src_tags : tgt_tags;
  }
};

/// In-memory parallel corpus. Pair i has id i.
class ParallelCorpus {
 public:
  ParallelCorpus() = default;

  /// Appends a pair, assigning it the next id. Token sequences must be
  /// non-empty and tag sequences, if given, must match token arity.
  void Add(Tokens src, Tokens tgt);

  void AttachTags(Side side, std::vector<Tokens> tags);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool has_tags(Side side) const { return side == Side::kSrc ? has_src_tags_ : has_tgt_tags_; }

  const SentencePair& operator[](std::size_t i) const { return pairs_[i]; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

 private:
  std::vector<SentencePair> pairs_;
  bool has_src_tags_ = false;
  bool has_tgt_tags_ = false;
};

/// Whitespace tokenization: tokens are maximal runs of non-whitespace.
Tokens Tokenize(std::string_view line);

/// Parses `token<sep>tag` items, splitting each at the last occurrence of
/// `separator`. Throws MalformedItem if an item has no separator or an
/// empty token or tag.
std::vector<std::pair<std::string, std::string>> ParseTaggedLine(std::string_view line,
                                                                 std::string_view separator);

struct TagFiles {
  std::optional<std::filesystem::path> src;
  std::optional<std::filesystem::path> tgt;
  std::string separator = "|";
};

/// Streams a line-aligned parallel corpus one pair at a time, with the same
/// validation as LoadParallel (alignment, empty lines, UTF-8, tag arity).
/// Memory use is independent of corpus size.
class ParallelReader {
 public:
  ParallelReader(const std::filesystem::path& src_path, const std::filesystem::path& tgt_path,
                 TagFiles tags = {});

  /// Fills `pair` with the next example; returns false at a clean end of
  /// both files and throws LineCountMismatch if one file ends early.
  bool Next(SentencePair& pair);

  std::size_t pairs_read() const { return next_id_; }
  bool has_tags(Side side) const;

 private:
  std::ifstream src_;
  std::ifstream tgt_;
  std::optional<std::ifstream> src_tags_;
  std::optional<std::ifstream> tgt_tags_;
  std::filesystem::path src_path_;
  std::filesystem::path tgt_path_;
  std::string separator_;
  std::size_t next_id_ = 0;
  std::string line_;
};

ParallelCorpus LoadParallel(const std::filesystem::path& src_path,
                            const std::filesystem::path& tgt_path);

/// Attaches tags for one side from a tagged file aligned with `corpus`.
ParallelCorpus LoadTagged(const std::filesystem::path& path, std::string_view separator,
                          Side side, ParallelCorpus corpus);

/// Writes pairs in flattened schedule order, tokens joined by single spaces.
void WriteReordered(const ParallelCorpus& corpus, const Schedule& schedule,
                    const std::filesystem::path& out_src, const std::filesystem::path& out_tgt);

/// WriteReordered without loading the corpus: indexes line offsets of both
/// files (8 bytes per line each) and seeks to each scheduled line.
void ReorderFiles(const std::filesystem::path& src_path, const std::filesystem::path& tgt_path,
                  const Schedule& schedule, const std::filesystem::path& out_src,
                  const std::filesystem::path& out_tgt);

std::size_t CountLines(const std::filesystem::path& path);

struct FilteredCorpus {
  ParallelCorpus corpus;
  /// origin[new_id] = id in the unfiltered corpus.
  std::vector<ExampleId> origin;
};

/// Keeps pairs whose both sides have at most `max_tokens` tokens. Not
/// applied by any loader by default.
FilteredCorpus FilterByLength(const ParallelCorpus& corpus, std::size_t max_tokens);

}  // namespace corpsched
