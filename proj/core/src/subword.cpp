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

#include "corpsched/subword.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>

#include "corpsched/error.hpp"
#include "text_util.hpp"

namespace corpsched {

namespace {

using SymbolId = std::uint32_t;
using PairKey = std::uint64_t;

PairKey MakeKey(SymbolId left, SymbolId right) {
  return (static_cast<PairKey>(left) << 32) | right;
}
SymbolId LeftOf(PairKey key) { return static_cast<SymbolId>(key >> 32); }
SymbolId RightOf(PairKey key) { return static_cast<SymbolId>(key & 0xFFFFFFFFu); }

class SymbolTable {
 public:
  SymbolId Intern(std::string_view symbol) {
    const auto it = id_of_.find(symbol);
    if (it != id_of_.end()) return it->second;
    const auto id = static_cast<SymbolId>(symbols_.size());
    symbols_.emplace_back(symbol);
    id_of_.emplace(symbols_.back(), id);
    return id;
  }
  const std::string& operator[](SymbolId id) const { return symbols_[id]; }
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolId, StringHash, std::equal_to<>> id_of_;
};

struct QueueEntry {
  std::int64_t count;
  PairKey key;
};

/// Highest count first, then (left, right) in byte order.
struct QueueOrder {
  const SymbolTable* symbols;
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.count != b.count) return a.count > b.count;
    if (a.key == b.key) return false;
    const std::string& la = (*symbols)[LeftOf(a.key)];
    const std::string& lb = (*symbols)[LeftOf(b.key)];
    if (la != lb) return la < lb;
    return (*symbols)[RightOf(a.key)] < (*symbols)[RightOf(b.key)];
  }
};

struct Word {
  std::vector<SymbolId> symbols;
  std::int64_t count;
};

bool ContainsPair(const std::vector<SymbolId>& s, SymbolId a, SymbolId b) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == a && s[i + 1] == b) return true;
  }
  return false;
}

template <typename T>
void MergeInPlace(std::vector<T>& s, const T& a, const T& b, const T& merged) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < s.size();) {
    if (i + 1 < s.size() && s[i] == a && s[i + 1] == b) {
      s[out++] = merged;
      i += 2;
    } else {
      s[out++] = s[i++];
    }
  }
  s.resize(out);
}

}  // namespace

BpeModel LearnBpe(const WordCounts& words, std::size_t target_size) {
  std::vector<std::pair<std::string_view, std::uint64_t>> sorted(words.begin(), words.end());
  std::sort(sorted.begin(), sorted.end());

  SymbolTable table;
  std::vector<Word> corpus;
  corpus.reserve(sorted.size());
  for (const auto& [text, count] : sorted) {
    if (count == 0) continue;
    Word word{{}, static_cast<std::int64_t>(count)};
    if (!detail::IsValidUtf8(text)) {
      throw Error(ErrorCode::kInvalidUtf8, "word '" + std::string(text) + "'");
    }
    for (std::string_view ch : detail::Utf8Characters(text)) {
      word.symbols.push_back(table.Intern(ch));
    }
    word.symbols.push_back(table.Intern(kEowSymbol));
    corpus.push_back(std::move(word));
  }
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "no words to learn BPE from");

  BpeModel model;
  model.target_size = target_size;
  for (SymbolId id = 0; id < table.size(); ++id) model.alphabet.push_back(table[id]);
  std::sort(model.alphabet.begin(), model.alphabet.end());
  if (target_size <= model.alphabet.size()) {
    throw Error(ErrorCode::kTargetTooSmall,
                "target vocabulary " + std::to_string(target_size) +
                    " does not exceed the alphabet size " + std::to_string(model.alphabet.size()));
  }

  std::unordered_map<PairKey, std::int64_t> counts;
  std::unordered_map<PairKey, std::vector<std::uint32_t>> where;
  for (std::uint32_t w = 0; w < corpus.size(); ++w) {
    const auto& s = corpus[w].symbols;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      const PairKey key = MakeKey(s[i], s[i + 1]);
      counts[key] += corpus[w].count;
      auto& list = where[key];
      if (list.empty() || list.back() != w) list.push_back(w);
    }
  }
  std::set<QueueEntry, QueueOrder> queue(QueueOrder{&table});
  for (const auto& [key, count] : counts) queue.insert({count, key});

  std::unordered_map<PairKey, std::int64_t> delta;
  while (model.vocabulary_size() < target_size && !queue.empty()) {
    const QueueEntry best = *queue.begin();
    if (best.count < 2) break;
    const SymbolId a = LeftOf(best.key);
    const SymbolId b = RightOf(best.key);
    const SymbolId merged = table.Intern(table[a] + table[b]);
    model.merges.emplace_back(table[a], table[b]);

    std::vector<std::uint32_t> affected = std::move(where[best.key]);
    where.erase(best.key);
    delta.clear();
    for (std::uint32_t w : affected) {
      Word& word = corpus[w];
      if (!ContainsPair(word.symbols, a, b)) continue;
      for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
        delta[MakeKey(word.symbols[i], word.symbols[i + 1])] -= word.count;
      }
      MergeInPlace(word.symbols, a, b, merged);
      for (std::size_t i = 0; i + 1 < word.symbols.size(); ++i) {
        const PairKey key = MakeKey(word.symbols[i], word.symbols[i + 1]);
        delta[key] += word.count;
        if (word.symbols[i] == merged || word.symbols[i + 1] == merged) {
          auto& list = where[key];
          if (list.empty() || list.back() != w) list.push_back(w);
        }
      }
    }
    for (const auto& [key, change] : delta) {
      if (change == 0) continue;
      auto it = counts.find(key);
      const std::int64_t old = it == counts.end() ? 0 : it->second;
      if (old > 0) queue.erase({old, key});
      const std::int64_t now = old + change;
      if (now > 0) {
        counts[key] = now;
        queue.insert({now, key});
      } else if (it != counts.end()) {
        counts.erase(it);
      }
    }
  }
  return model;
}

BpeModel LearnBpe(const ParallelCorpus& corpus, std::size_t target_size) {
  WordCounts counts;
  for (const SentencePair& pair : corpus) {
    CountWords(pair.src_tokens, counts);
    CountWords(pair.tgt_tokens, counts);
  }
  return LearnBpe(counts, target_size);
}

namespace {

std::string PairKeyText(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key += ' ';
  key.append(right);
  return key;
}

}  // namespace

BpeEncoder::BpeEncoder(const BpeModel& model) {
  rank_.reserve(model.merges.size());
  for (std::size_t r = 0; r < model.merges.size(); ++r) {
    rank_.emplace(PairKeyText(model.merges[r].first, model.merges[r].second), r);
  }
}

std::vector<std::string> BpeEncoder::SegmentWord(std::string_view word) const {
  // A stray 0xFF byte would read as the end-of-word symbol.
  if (!detail::IsValidUtf8(word)) {
    throw Error(ErrorCode::kInvalidUtf8, "word '" + std::string(word) + "'");
  }
  std::vector<std::string> units;
  for (std::string_view ch : detail::Utf8Characters(word)) units.emplace_back(ch);
  units.emplace_back(kEowSymbol);
  std::string key;
  for (;;) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    std::size_t best_at = 0;
    for (std::size_t i = 0; i + 1 < units.size(); ++i) {
      key.assign(units[i]);
      key += ' ';
      key += units[i + 1];
      const auto it = rank_.find(std::string_view(key));
      if (it != rank_.end() && it->second < best_rank) {
        best_rank = it->second;
        best_at = i;
      }
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;
    const std::string left = units[best_at];
    const std::string right = units[best_at + 1];
    MergeInPlace(units, left, right, left + right);
  }
  return units;
}

std::vector<std::string> BpeEncoder::Apply(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  for (const std::string& token : tokens) {
    auto it = cache_.find(std::string_view(token));
    if (it == cache_.end()) {
      std::vector<std::string> units = SegmentWord(token);
      units.back().resize(units.back().size() - kEowSymbol.size());
      if (units.back().empty()) units.pop_back();
      for (std::size_t i = 0; i + 1 < units.size(); ++i) units[i] += kContinuationMarker;
      it = cache_.emplace(token, std::move(units)).first;
    }
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  return out;
}

std::vector<std::string> ApplyBpe(std::span<const std::string> tokens, const BpeModel& model) {
  BpeEncoder encoder(model);
  return encoder.Apply(tokens);
}

std::vector<std::string> DecodeBpe(std::span<const std::string> units) {
  std::vector<std::string> tokens;
  std::string current;
  bool pending = false;
  for (const std::string& unit : units) {
    if (std::string_view(unit).ends_with(kContinuationMarker)) {
      current.append(unit, 0, unit.size() - kContinuationMarker.size());
      pending = true;
    } else {
      current += unit;
      tokens.push_back(std::move(current));
      current.clear();
      pending = false;
    }
  }
  if (pending) {
    throw Error(ErrorCode::kDanglingContinuation, "sequence ends with a continuation unit");
  }
  return tokens;
}

std::string ExternalSymbol(std::string_view symbol) {
  if (symbol.ends_with(kEowSymbol)) {
    std::string out(symbol.substr(0, symbol.size() - kEowSymbol.size()));
    out += kEowMarker;
    return out;
  }
  return std::string(symbol);
}

namespace {

std::string InternalSymbol(std::string_view symbol, std::string_view eow) {
  if (symbol.ends_with(eow)) {
    std::string out(symbol.substr(0, symbol.size() - eow.size()));
    out += kEowSymbol;
    return out;
  }
  return std::string(symbol);
}

std::size_t ParseCount(std::string_view text, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::kParse,
                "merges line " + std::to_string(line_no) + ": bad count '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void WriteMerges(std::ostream& out, const BpeModel& model) {
  out << "#eow=" << kEowMarker << '\n';
  out << "#target_size=" << model.target_size << '\n';
  for (const auto& [left, right] : model.merges) {
    out << ExternalSymbol(left) << ' ' << ExternalSymbol(right) << '\n';
  }
}

BpeModel ReadMerges(std::istream& in) {
  BpeModel model;
  std::string eow(kEowMarker);
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> atoms;
  std::optional<std::size_t> target_size;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto parts = detail::SplitWhitespace(line);
    if (parts.empty()) continue;
    // A merge always has two fields, so a single '#' field is a header even
    // when a symbol itself starts with '#'.
    if (parts.size() == 1 && line.starts_with('#')) {
      if (line.starts_with("#eow=")) {
        eow = line.substr(5);
        if (eow.empty()) throw Error(ErrorCode::kParse, "merges: empty eow marker");
      } else if (line.starts_with("#target_size=")) {
        target_size = ParseCount(line.substr(13), line_no);
      }
      continue;
    }
    if (parts.size() != 2) {
      throw Error(ErrorCode::kParse, "merges line " + std::to_string(line_no) +
                                         ": expected 'left right'");
    }
    SymbolPair merge{InternalSymbol(parts[0], eow), InternalSymbol(parts[1], eow)};
    for (const std::string* s : {&merge.first, &merge.second}) {
      std::string_view body = *s;
      if (body.ends_with(kEowSymbol)) {
        atoms.emplace(kEowSymbol);
        body.remove_suffix(kEowSymbol.size());
      }
      for (std::string_view ch : detail::Utf8Characters(body)) atoms.emplace(ch);
    }
    model.merges.push_back(std::move(merge));
  }
  model.alphabet.assign(atoms.begin(), atoms.end());
  model.target_size = target_size.value_or(model.vocabulary_size());
  return model;
}

BpeModel ReadMergesFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open merges file '" + path.string() + "'");
  return ReadMerges(in);
}

}  // namespace corpsched
