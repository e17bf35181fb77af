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

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpsched/corpus_io.hpp"
#include "corpsched/features.hpp"

namespace corpsched {

inline constexpr std::size_t kDefaultBpeVocabularySize = 30000;

/// Serialized end-of-word marker in merges files.
inline constexpr std::string_view kEowMarker = "</w>";
/// Suffix on every subword unit that does not end a word.
inline constexpr std::string_view kContinuationMarker = "@@";

/// In memory the end-of-word symbol is the single byte 0xFF, which never
/// occurs in UTF-8 and compares greater than every other byte, so symbol
/// pairs order with "eow sorts after all ordinary symbols" under plain
/// std::string comparison. kEowMarker is used only at file boundaries.
inline constexpr std::string_view kEowSymbol = "\xFF";

using SymbolPair = std::pair<std::string, std::string>;

struct BpeModel {
  /// Merges in application order, symbols in the in-memory encoding.
  std::vector<SymbolPair> merges;
  /// Initial symbols: every character seen while learning, plus eow.
  std::vector<std::string> alphabet;
  std::size_t target_size = kDefaultBpeVocabularySize;
  std::string eow = std::string(kEowMarker);

  std::size_t vocabulary_size() const { return alphabet.size() + merges.size(); }
};

/// Joint BPE over word counts. Each word is its characters plus eow; the
/// most frequent adjacent pair (weighted by word count) is merged until
/// alphabet + merges reaches target_size or no pair occurs twice. Equal
/// counts go to the lexicographically smallest (left, right). Throws
/// TargetTooSmall when target_size <= alphabet size.
BpeModel LearnBpe(const WordCounts& words, std::size_t target_size);

/// Counts words over both sides of the corpus, then LearnBpe.
BpeModel LearnBpe(const ParallelCorpus& corpus, std::size_t target_size);

/// Segments tokens with a fixed model. Reuses per-word results across calls.
class BpeEncoder {
 public:
  explicit BpeEncoder(const BpeModel& model);

  /// Units of one word in the in-memory encoding (final unit ends in eow).
  /// Throws InvalidUtf8 for malformed words.
  std::vector<std::string> SegmentWord(std::string_view word) const;

  /// Serialized units: non-final units get `@@`, the eow is dropped from the
  /// final unit and a bare eow unit folds into its predecessor.
  std::vector<std::string> Apply(std::span<const std::string> tokens);

 private:
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> rank_;
  std::unordered_map<std::string, std::vector<std::string>, StringHash, std::equal_to<>> cache_;
};

std::vector<std::string> ApplyBpe(std::span<const std::string> tokens, const BpeModel& model);

/// Joins `@@`-suffixed units with their successors. Throws
/// DanglingContinuation if the last unit still carries the marker.
std::vector<std::string> DecodeBpe(std::span<const std::string> units);

/// `#eow=</w>` and `#target_size=<n>` headers, then one `left right` merge
/// per line in application order.
void WriteMerges(std::ostream& out, const BpeModel& model);
BpeModel ReadMerges(std::istream& in);
BpeModel ReadMergesFile(const std::filesystem::path& path);

/// Symbol in file form: trailing eow byte rendered as kEowMarker.
std::string ExternalSymbol(std::string_view symbol);

}  // namespace corpsched
