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

#include "corpsched/features.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>

#include "corpsched/error.hpp"
#include "text_util.hpp"

namespace corpsched {

void CountWords(std::span<const std::string> tokens, WordCounts& counts) {
  for (const std::string& token : tokens) {
    auto it = counts.find(std::string_view(token));
    if (it == counts.end()) {
      counts.emplace(token, 1);
    } else {
      ++it->second;
    }
  }
}

std::string_view RankScopeName(RankScope scope) {
  switch (scope) {
    case RankScope::kSrc: return "src";
    case RankScope::kTgt: return "tgt";
    case RankScope::kMax: return "max";
    case RankScope::kCombined: return "combined";
  }
  return "unknown";
}

RankTable RankTable::FromCounts(const WordCounts& counts, std::size_t block_size) {
  std::vector<std::pair<std::string_view, std::uint64_t>> entries(counts.begin(), counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> ranked;
  ranked.reserve(entries.size());
  for (const auto& [word, count] : entries) ranked.emplace_back(word);
  return FromRankedWords(std::move(ranked), block_size);
}

RankTable RankTable::FromRankedWords(std::vector<std::string> ranked, std::size_t block_size) {
  if (block_size == 0) throw Error(ErrorCode::kInvalidArgument, "block size must be >= 1");
  RankTable table;
  table.block_size_ = block_size;
  table.ranked_ = std::move(ranked);
  table.total_blocks_ =
      static_cast<std::uint32_t>((table.ranked_.size() + block_size - 1) / block_size);
  table.block_of_.reserve(table.ranked_.size());
  for (std::size_t rank = 0; rank < table.ranked_.size(); ++rank) {
    const auto block = static_cast<std::uint32_t>(rank / block_size + 1);
    if (!table.block_of_.emplace(table.ranked_[rank], block).second) {
      throw Error(ErrorCode::kParse, "duplicate word '" + table.ranked_[rank] + "' in rank table");
    }
  }
  return table;
}

std::uint32_t RankTable::block_of(std::string_view word) const {
  const auto it = block_of_.find(word);
  return it == block_of_.end() ? oov_block() : it->second;
}

RankTable BuildRankTable(const ParallelCorpus& corpus, RankScope scope, std::size_t block_size) {
  if (scope == RankScope::kMax) {
    throw Error(ErrorCode::kInvalidArgument,
                "rank tables are built per side or combined; max uses two per-side tables");
  }
  WordCounts counts;
  for (const SentencePair& pair : corpus) {
    if (scope != RankScope::kTgt) CountWords(pair.src_tokens, counts);
    if (scope != RankScope::kSrc) CountWords(pair.tgt_tokens, counts);
  }
  return RankTable::FromCounts(counts, block_size);
}

void WriteRankTable(std::ostream& out, const RankTable& table) {
  out << "#block_size=" << table.block_size() << '\n';
  const auto& words = table.ranked_words();
  for (std::size_t rank = 0; rank < words.size(); ++rank) {
    out << words[rank] << '\t' << (rank / table.block_size() + 1) << '\n';
  }
}

RankTable ReadRankTable(std::istream& in) {
  std::string line;
  std::size_t block_size = 0;
  std::vector<std::string> ranked;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tab = line.find('\t');
    // Word lines always carry a tab, so a word may itself start with '#'.
    if (tab == std::string::npos && line.starts_with("#block_size=")) {
      const std::string_view v = std::string_view(line).substr(12);
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), block_size);
      if (ec != std::errc{} || ptr != v.data() + v.size() || block_size == 0) {
        throw Error(ErrorCode::kParse, "rank table: bad block size '" + std::string(v) + "'");
      }
      continue;
    }
    if (tab == std::string::npos && (line.starts_with("#") || line.empty())) continue;
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorCode::kParse, "rank table line " + std::to_string(line_no));
    }
    std::uint32_t block = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, block);
    if (ec != std::errc{} || ptr != last) {
      throw Error(ErrorCode::kParse, "rank table line " + std::to_string(line_no));
    }
    ranked.emplace_back(line.substr(0, tab));
    if (block_size != 0 && block != (ranked.size() - 1) / block_size + 1) {
      throw Error(ErrorCode::kParse, "rank table line " + std::to_string(line_no) +
                                         ": block does not match rank order");
    }
  }
  if (block_size == 0) throw Error(ErrorCode::kParse, "rank table: missing #block_size header");
  return RankTable::FromRankedWords(std::move(ranked), block_size);
}

RankTable ReadRankTableFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open rank table '" + path.string() + "'");
  return ReadRankTable(in);
}

std::uint32_t SentenceRankBlock(std::span<const std::string> tokens, const RankTable& table) {
  std::uint32_t block = 0;
  for (const std::string& token : tokens) block = std::max(block, table.block_of(token));
  return block;
}

Lexicon::Lexicon(std::span<const std::string> forms) {
  for (const std::string& form : forms) forms_.insert(detail::AsciiLower(form));
}

Lexicon Lexicon::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open lexicon '" + path.string() + "'");
  std::vector<std::string> forms;
  std::string line;
  while (std::getline(in, line)) {
    for (std::string_view form : detail::SplitWhitespace(line)) forms.emplace_back(form);
  }
  return Lexicon(forms);
}

Lexicon Lexicon::EnglishConjunctions() {
  static const std::vector<std::string> kForms = {"and", "or", "but", "nor", "yet", "so"};
  return Lexicon(kForms);
}

bool Lexicon::Contains(std::string_view token) const {
  return forms_.contains(std::string_view(detail::AsciiLower(token)));
}

std::string_view CategoryName(Category category) {
  switch (category) {
    case Category::kConjunction: return "conj";
    case Category::kNoun: return "nouns";
    case Category::kProperNoun: return "proper-nouns";
    case Category::kVerb: return "verbs";
  }
  return "unknown";
}

std::string_view DefaultTagPrefix(Category category) {
  switch (category) {
    case Category::kConjunction: return "CCONJ";
    case Category::kNoun: return "NOUN";
    case Category::kProperNoun: return "PROPN";
    case Category::kVerb: return "VERB";
  }
  return "";
}

std::string FeatureName(const FeatureKind& kind) {
  struct Visitor {
    std::string operator()(const LengthFeature& f) const {
      return std::string(SideName(f.side)) + "-length";
    }
    std::string operator()(const CategoryFeature& f) const {
      return std::string(SideName(f.side)) + "-" + std::string(CategoryName(f.category));
    }
    std::string operator()(const RankFeature& f) const {
      return std::string(RankScopeName(f.scope)) + "-rank";
    }
  };
  return std::visit(Visitor{}, kind);
}

FeatureKind ParseFeature(std::string_view name) {
  const std::string original(name);
  if (name == "rank") return RankFeature{RankScope::kTgt};
  for (RankScope scope : {RankScope::kSrc, RankScope::kTgt, RankScope::kMax, RankScope::kCombined}) {
    if (name == std::string(RankScopeName(scope)) + "-rank") return RankFeature{scope};
  }
  Side side = Side::kTgt;
  if (name.starts_with("src-")) {
    side = Side::kSrc;
    name.remove_prefix(4);
  } else if (name.starts_with("tgt-")) {
    name.remove_prefix(4);
  }
  if (name == "length" || name == "len") return LengthFeature{side};
  const auto category = [&]() -> std::optional<Category> {
    if (name == "conj" || name == "conjunctions") return Category::kConjunction;
    if (name == "nouns") return Category::kNoun;
    if (name == "proper-nouns") return Category::kProperNoun;
    if (name == "verbs") return Category::kVerb;
    return std::nullopt;
  }();
  if (!category) {
    throw Error(ErrorCode::kInvalidArgument, "unknown feature '" + original + "'");
  }
  CategoryFeature feature{side, *category, CountMethod::kTagPrefix,
                          std::string(DefaultTagPrefix(*category))};
  if (*category == Category::kConjunction) feature.method = CountMethod::kLexicon;
  return feature;
}

namespace {

const RankTable& RequireTable(const RankTable* table, std::string_view what,
                              std::size_t block_size) {
  if (table == nullptr) {
    throw Error(ErrorCode::kMissingResource, std::string(what) + " rank table required");
  }
  if (table->block_size() != block_size) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " rank table has block size " +
                    std::to_string(table->block_size()) + ", feature expects " +
                    std::to_string(block_size));
  }
  return *table;
}

FeatureValue CountCategory(const SentencePair& pair, const CategoryFeature& f,
                           const FeatureResources& resources) {
  const Tokens& tokens = pair.tokens(f.side);
  std::size_t count = 0;
  if (f.method == CountMethod::kLexicon) {
    if (resources.lexicon == nullptr) {
      throw Error(ErrorCode::kMissingResource, "lexicon required for " +
                                                   std::string(CategoryName(f.category)));
    }
    for (const std::string& token : tokens) count += resources.lexicon->Contains(token);
  } else {
    if (f.tag_prefix.empty()) throw Error(ErrorCode::kInvalidArgument, "empty tag prefix");
    const auto& tags = pair.tags(f.side);
    if (!tags) {
      throw Error(ErrorCode::kMissingTags, "pair " + std::to_string(pair.id) + " has no " +
                                               std::string(SideName(f.side)) + " tags");
    }
    for (const std::string& tag : *tags) count += tag.starts_with(f.tag_prefix);
  }
  return static_cast<FeatureValue>(count);
}

FeatureValue RankBlock(const SentencePair& pair, const RankFeature& f,
                       const FeatureResources& resources) {
  switch (f.scope) {
    case RankScope::kSrc:
      return SentenceRankBlock(pair.src_tokens, RequireTable(resources.src_ranks, "src", f.block_size));
    case RankScope::kTgt:
      return SentenceRankBlock(pair.tgt_tokens, RequireTable(resources.tgt_ranks, "tgt", f.block_size));
    case RankScope::kMax:
      return std::max(
          SentenceRankBlock(pair.src_tokens, RequireTable(resources.src_ranks, "src", f.block_size)),
          SentenceRankBlock(pair.tgt_tokens, RequireTable(resources.tgt_ranks, "tgt", f.block_size)));
    case RankScope::kCombined: {
      const RankTable& table = RequireTable(resources.combined_ranks, "combined", f.block_size);
      return std::max(SentenceRankBlock(pair.src_tokens, table),
                      SentenceRankBlock(pair.tgt_tokens, table));
    }
  }
  return 0;
}

}  // namespace

FeatureValue Extract(const SentencePair& pair, const FeatureKind& kind,
                     const FeatureResources& resources) {
  if (const auto* f = std::get_if<LengthFeature>(&kind)) {
    return static_cast<FeatureValue>(pair.tokens(f->side).size());
  }
  if (const auto* f = std::get_if<CategoryFeature>(&kind)) {
    return CountCategory(pair, *f, resources);
  }
  return RankBlock(pair, std::get<RankFeature>(kind), resources);
}

FeatureVector ExtractAll(const ParallelCorpus& corpus, const FeatureKind& kind,
                         const FeatureResources& resources) {
  FeatureVector out{FeatureName(kind), {}};
  out.values.reserve(corpus.size());
  for (const SentencePair& pair : corpus) out.values.push_back(Extract(pair, kind, resources));
  return out;
}

FeatureVector ExtractStream(ParallelReader& reader, const FeatureKind& kind,
                            const FeatureResources& resources) {
  FeatureVector out{FeatureName(kind), {}};
  SentencePair pair;
  while (reader.Next(pair)) out.values.push_back(Extract(pair, kind, resources));
  return out;
}

void WriteFeatureVector(std::ostream& out, const FeatureVector& values) {
  std::string buf = "#feature=" + values.name + "\n#n=" + std::to_string(values.size()) + "\n";
  char tmp[16];
  for (FeatureValue v : values.values) {
    auto [end, ec] = std::to_chars(tmp, tmp + sizeof(tmp), v);
    buf.append(tmp, end);
    buf += '\n';
    if (buf.size() > (1 << 16)) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void WriteFeatureVectorFile(const std::filesystem::path& path, const FeatureVector& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  WriteFeatureVector(out, values);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

FeatureVector ReadFeatureVector(std::istream& in) {
  FeatureVector out;
  std::optional<std::size_t> declared;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with("#feature=")) {
      out.name = line.substr(9);
      continue;
    }
    if (line.starts_with("#n=")) {
      std::size_t n = 0;
      const char* last = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(line.data() + 3, last, n);
      if (ec != std::errc{} || ptr != last) {
        throw Error(ErrorCode::kParse, "feature file line " + std::to_string(line_no));
      }
      declared = n;
      out.values.reserve(std::min<std::size_t>(n, std::size_t{1} << 24));
      continue;
    }
    if (line.starts_with("#")) continue;
    FeatureValue v = 0;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(line.data(), last, v);
    if (ec != std::errc{} || ptr != last || line.empty()) {
      throw Error(ErrorCode::kParse, "feature file line " + std::to_string(line_no) +
                                         ": bad value '" + line + "'");
    }
    out.values.push_back(v);
  }
  if (declared && *declared != out.values.size()) {
    throw Error(ErrorCode::kParse, "feature file declares n=" + std::to_string(*declared) +
                                       " but has " + std::to_string(out.values.size()) +
                                       " values");
  }
  if (out.values.size() > std::numeric_limits<ExampleId>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "feature file exceeds the example id range");
  }
  return out;
}

FeatureVector ReadFeatureVectorFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open feature file '" + path.string() + "'");
  return ReadFeatureVector(in);
}

}  // namespace corpsched
