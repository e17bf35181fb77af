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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "corpsched/corpus_io.hpp"
#include "corpsched/types.hpp"

namespace corpsched {

inline constexpr std::size_t kDefaultRankBlockSize = 5000;

using WordCounts = std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>>;

void CountWords(std::span<const std::string> tokens, WordCounts& counts);

enum class RankScope { kSrc, kTgt, kMax, kCombined };

std::string_view RankScopeName(RankScope scope);

/// Word -> frequency-rank block. Words are ordered by descending count,
/// ties by ascending byte order; block k (1-based) holds ranks
/// [(k-1)*block_size, k*block_size). Words never seen map to oov_block().
class RankTable {
 public:
  RankTable() = default;

  static RankTable FromCounts(const WordCounts& counts, std::size_t block_size);

  /// Rebuilds a table from words already in rank order.
  static RankTable FromRankedWords(std::vector<std::string> ranked, std::size_t block_size);

  std::uint32_t block_of(std::string_view word) const;
  bool contains(std::string_view word) const { return block_of_.contains(word); }

  std::size_t block_size() const { return block_size_; }
  std::uint32_t total_blocks() const { return total_blocks_; }
  std::uint32_t oov_block() const { return total_blocks_ + 1; }
  const std::vector<std::string>& ranked_words() const { return ranked_; }

 private:
  std::size_t block_size_ = kDefaultRankBlockSize;
  std::uint32_t total_blocks_ = 0;
  std::vector<std::string> ranked_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> block_of_;
};

/// Counts token occurrences on the chosen side(s); kCombined counts source
/// and target together. kMax is not a table scope.
RankTable BuildRankTable(const ParallelCorpus& corpus, RankScope scope,
                         std::size_t block_size = kDefaultRankBlockSize);

/// `#block_size=<n>` header, then `word<TAB>block` lines in rank order.
void WriteRankTable(std::ostream& out, const RankTable& table);
RankTable ReadRankTable(std::istream& in);
RankTable ReadRankTableFile(const std::filesystem::path& path);

/// Block of the least frequent word: max over tokens of block_of(token).
std::uint32_t SentenceRankBlock(std::span<const std::string> tokens, const RankTable& table);

/// Case-insensitive (ASCII) set of surface forms.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::span<const std::string> forms);

  static Lexicon FromFile(const std::filesystem::path& path);
  /// `and, or, but, nor, yet, so`; same list as data/conjunctions.en.txt.
  static Lexicon EnglishConjunctions();

  bool Contains(std::string_view token) const;
  std::size_t size() const { return forms_.size(); }

 private:
  std::unordered_set<std::string, StringHash, std::equal_to<>> forms_;
};

enum class Category { kConjunction, kNoun, kProperNoun, kVerb };
enum class CountMethod { kLexicon, kTagPrefix };

std::string_view CategoryName(Category category);
/// Universal POS tag used as the default prefix: CCONJ, NOUN, PROPN, VERB.
std::string_view DefaultTagPrefix(Category category);

struct LengthFeature {
  Side side = Side::kTgt;
};

struct CategoryFeature {
  Side side = Side::kTgt;
  Category category = Category::kConjunction;
  CountMethod method = CountMethod::kLexicon;
  std::string tag_prefix;
};

struct RankFeature {
  RankScope scope = RankScope::kTgt;
  std::size_t block_size = kDefaultRankBlockSize;
};

using FeatureKind = std::variant<LengthFeature, CategoryFeature, RankFeature>;

/// Canonical feature names: `src-length`, `tgt-conj`, `tgt-nouns`,
/// `src-proper-nouns`, `tgt-verbs`, `max-rank`, `combined-rank`, ...
std::string FeatureName(const FeatureKind& kind);

/// Accepts canonical names plus side-less shorthands (`length`, `conj`,
/// `nouns`, `verbs`, ...) which default to the target side. Category
/// features get the default method: lexicon for conjunctions, tag prefix
/// (with DefaultTagPrefix) otherwise.
FeatureKind ParseFeature(std::string_view name);

struct FeatureResources {
  const RankTable* src_ranks = nullptr;
  const RankTable* tgt_ranks = nullptr;
  const RankTable* combined_ranks = nullptr;
  const Lexicon* lexicon = nullptr;
};

FeatureValue Extract(const SentencePair& pair, const FeatureKind& kind,
                     const FeatureResources& resources);

/// One feature value per example, indexed by id.
struct FeatureVector {
  std::string name;
  std::vector<FeatureValue> values;

  std::size_t size() const { return values.size(); }
  FeatureValue operator[](ExampleId id) const { return values[id]; }
};

FeatureVector ExtractAll(const ParallelCorpus& corpus, const FeatureKind& kind,
                         const FeatureResources& resources);

/// Same values as ExtractAll, reading pairs from `reader` without keeping
/// their text.
FeatureVector ExtractStream(ParallelReader& reader, const FeatureKind& kind,
                            const FeatureResources& resources);

/// `#feature=<name>` and `#n=<count>` headers, then one value per line
/// (line i is example i).
void WriteFeatureVector(std::ostream& out, const FeatureVector& values);
void WriteFeatureVectorFile(const std::filesystem::path& path, const FeatureVector& values);
FeatureVector ReadFeatureVector(std::istream& in);
FeatureVector ReadFeatureVectorFile(const std::filesystem::path& path);

}  // namespace corpsched
