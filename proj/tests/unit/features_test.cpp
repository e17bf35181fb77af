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

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "corpsched/error.hpp"
#include "corpsched/features.hpp"
#include "test_support.hpp"

namespace corpsched {
namespace {

using testing::TempDir;
using testing::ThrowsCode;
using testing::WriteFile;

WordCounts Counts(std::initializer_list<std::pair<const char*, std::uint64_t>> items) {
  WordCounts counts;
  for (const auto& [w, c] : items) counts.emplace(w, c);
  return counts;
}

SentencePair Pair(Tokens src, Tokens tgt) {
  SentencePair p;
  p.src_tokens = std::move(src);
  p.tgt_tokens = std::move(tgt);
  return p;
}

TEST(RankTableTest, BlocksFollowFrequency) {
  const RankTable t = RankTable::FromCounts(Counts({{"the", 10}, {"cat", 3}, {"sat", 1}}), 2);
  EXPECT_EQ(t.block_of("the"), 1u);
  EXPECT_EQ(t.block_of("cat"), 1u);
  EXPECT_EQ(t.block_of("sat"), 2u);
  EXPECT_EQ(t.total_blocks(), 2u);
  EXPECT_EQ(t.oov_block(), 3u);
}

TEST(RankTableTest, SentenceBlockIsLeastFrequentWord) {
  const RankTable t = RankTable::FromCounts(Counts({{"the", 10}, {"cat", 3}, {"sat", 1}}), 2);
  const Tokens a{"the", "cat"}, b{"the", "sat"}, c{"the", "zebra"};
  EXPECT_EQ(SentenceRankBlock(a, t), 1u);
  EXPECT_EQ(SentenceRankBlock(b, t), 2u);
  EXPECT_EQ(SentenceRankBlock(c, t), t.oov_block());
}

TEST(RankTableTest, TiesBreakByByteOrder) {
  const RankTable t = RankTable::FromCounts(Counts({{"b", 5}, {"a", 5}}), 1);
  EXPECT_EQ(t.block_of("a"), 1u);
  EXPECT_EQ(t.block_of("b"), 2u);
}

TEST(RankTableTest, DefaultBlockSizeIsFiveThousand) {
  WordCounts counts;
  for (int i = 0; i < 5001; ++i) counts.emplace("w" + std::to_string(i), 100000 - i);
  const RankTable t = RankTable::FromCounts(counts, kDefaultRankBlockSize);
  EXPECT_EQ(t.block_of("w0"), 1u);
  EXPECT_EQ(t.block_of("w4999"), 1u);
  EXPECT_EQ(t.block_of("w5000"), 2u);
}

TEST(RankTableTest, ZeroBlockSizeIsRejected) {
  EXPECT_TRUE(ThrowsCode([] { RankTable::FromCounts(Counts({{"a", 1}}), 0); },
                         ErrorCode::kInvalidArgument));
}

// More frequent words never land in a later block.
TEST(RankTableTest, BlockIsMonotoneInFrequencyProperty) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    WordCounts counts;
    const int words = 1 + static_cast<int>(gen() % 200);
    for (int i = 0; i < words; ++i) counts.emplace("w" + std::to_string(i), 1 + gen() % 30);
    const RankTable t = RankTable::FromCounts(counts, 1 + gen() % 10);
    for (const auto& [u, fu] : counts) {
      for (const auto& [v, fv] : counts) {
        if (fu > fv) {
          ASSERT_LE(t.block_of(u), t.block_of(v));
        }
      }
    }
  }
}

TEST(RankTableTest, SentenceBlockNeverDecreasesWhenTokensAreAdded) {
  std::mt19937_64 gen(9);
  WordCounts counts;
  for (int i = 0; i < 50; ++i) counts.emplace("w" + std::to_string(i), 1 + gen() % 20);
  const RankTable t = RankTable::FromCounts(counts, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Tokens tokens{"w" + std::to_string(gen() % 60)};
    std::uint32_t prev = SentenceRankBlock(tokens, t);
    for (int k = 0; k < 10; ++k) {
      tokens.push_back("w" + std::to_string(gen() % 60));
      const std::uint32_t now = SentenceRankBlock(tokens, t);
      ASSERT_GE(now, prev);
      prev = now;
    }
  }
}

TEST(RankTableTest, CombinedScopeSumsBothSides) {
  ParallelCorpus c;
  c.Add({"dog", "pes"}, {"dog", "dog"});
  c.Add({"dog"}, {"cat"});
  c.Add({"dog"}, {"dog"});
  c.Add({"kočka"}, {"dog", "cat"});
  c.Add({"a"}, {"cat"});
  // dog: 3 source + 4 target = 7; cat: 3 target. Per side, source "dog" (3)
  // and target "dog" (4) both lead.
  const RankTable combined = BuildRankTable(c, RankScope::kCombined, 1);
  EXPECT_EQ(combined.ranked_words()[0], "dog");
  EXPECT_EQ(combined.ranked_words()[1], "cat");
  // a, kočka and pes tie at count 1 and follow in byte order.
  EXPECT_EQ(combined.block_of("pes"), 5u);

  const RankTable src = BuildRankTable(c, RankScope::kSrc, 1);
  EXPECT_EQ(src.ranked_words(), (std::vector<std::string>{"dog", "a", "kočka", "pes"}));
  EXPECT_FALSE(src.contains("cat"));
  EXPECT_TRUE(ThrowsCode([&] { BuildRankTable(c, RankScope::kMax, 1); },
                         ErrorCode::kInvalidArgument));
}

TEST(RankTableTest, FileRoundTripKeepsHashWords) {
  const RankTable t =
      RankTable::FromCounts(Counts({{"#tag", 4}, {"the", 9}, {"x", 1}, {"#", 2}}), 2);
  std::stringstream buf;
  WriteRankTable(buf, t);
  EXPECT_EQ(buf.str(), "#block_size=2\nthe\t1\n#tag\t1\n#\t2\nx\t2\n");
  const RankTable back = ReadRankTable(buf);
  EXPECT_EQ(back.ranked_words(), t.ranked_words());
  EXPECT_EQ(back.block_of("#tag"), 1u);
  EXPECT_EQ(back.block_size(), 2u);
}

TEST(RankTableTest, ReaderRejectsBadTables) {
  const auto read = [](const std::string& text) {
    std::istringstream in(text);
    return ReadRankTable(in);
  };
  EXPECT_TRUE(ThrowsCode([&] { read("the\t1\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { read("#block_size=1\nthe\t1\ncat\t1\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { read("#block_size=1\nthe 1\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { read("#block_size=2\nthe\t1\nthe\t1\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { read("#block_size=0\n"); }, ErrorCode::kParse));
}

TEST(LexiconTest, MatchesCaseInsensitively) {
  const Lexicon lex = Lexicon::EnglishConjunctions();
  EXPECT_TRUE(lex.Contains("and"));
  EXPECT_TRUE(lex.Contains("AND"));
  EXPECT_TRUE(lex.Contains("Nor"));
  EXPECT_FALSE(lex.Contains("android"));
}

TEST(LexiconTest, LoadsFromFile) {
  TempDir dir;
  WriteFile(dir / "lex", "a\nnebo ale\n\n");
  const Lexicon lex = Lexicon::FromFile(dir / "lex");
  EXPECT_EQ(lex.size(), 3u);
  EXPECT_TRUE(lex.Contains("Nebo"));
  EXPECT_TRUE(ThrowsCode([&] { Lexicon::FromFile(dir / "missing"); }, ErrorCode::kIo));
}

TEST(ParseFeatureTest, CanonicalNamesRoundTrip) {
  for (const char* name : {"src-length", "tgt-length", "src-conj", "tgt-nouns",
                           "src-proper-nouns", "tgt-verbs", "src-rank", "tgt-rank", "max-rank",
                           "combined-rank"}) {
    EXPECT_EQ(FeatureName(ParseFeature(name)), name);
  }
}

TEST(ParseFeatureTest, ShorthandsDefaultToTarget) {
  EXPECT_EQ(FeatureName(ParseFeature("length")), "tgt-length");
  EXPECT_EQ(FeatureName(ParseFeature("verbs")), "tgt-verbs");
  EXPECT_EQ(FeatureName(ParseFeature("rank")), "tgt-rank");
  EXPECT_EQ(FeatureName(ParseFeature("conjunctions")), "tgt-conj");
}

TEST(ParseFeatureTest, DefaultCountMethods) {
  const auto conj = std::get<CategoryFeature>(ParseFeature("conj"));
  EXPECT_EQ(conj.method, CountMethod::kLexicon);
  const auto nouns = std::get<CategoryFeature>(ParseFeature("src-nouns"));
  EXPECT_EQ(nouns.method, CountMethod::kTagPrefix);
  EXPECT_EQ(nouns.tag_prefix, "NOUN");
  EXPECT_EQ(std::get<CategoryFeature>(ParseFeature("proper-nouns")).tag_prefix, "PROPN");
}

TEST(ParseFeatureTest, UnknownFeatureIsUsageError) {
  EXPECT_TRUE(ThrowsCode([] { ParseFeature("adjectives"); }, ErrorCode::kInvalidArgument));
  EXPECT_TRUE(ThrowsCode([] { ParseFeature("src-"); }, ErrorCode::kInvalidArgument));
}

TEST(ExtractTest, Lengths) {
  const SentencePair p = Pair({"a", "b", "c"}, {"x", "y"});
  EXPECT_EQ(Extract(p, LengthFeature{Side::kTgt}, {}), 2u);
  EXPECT_EQ(Extract(p, LengthFeature{Side::kSrc}, {}), 3u);
}

TEST(ExtractTest, ConjunctionLexiconCount) {
  const Lexicon lex(std::vector<std::string>{"and", "or", "but", "nor", "yet"});
  const SentencePair p = Pair({"x"}, {"I", "ran", "and", "jumped", "and", "waved"});
  FeatureResources r;
  r.lexicon = &lex;
  EXPECT_EQ(Extract(p, ParseFeature("tgt-conj"), r), 2u);
  EXPECT_TRUE(ThrowsCode([&] { Extract(p, ParseFeature("tgt-conj"), {}); },
                         ErrorCode::kMissingResource));
}

TEST(ExtractTest, TagPrefixCount) {
  SentencePair p = Pair({"Anna", "sees", "dogs"}, {"x"});
  p.src_tags = Tokens{"PROPN", "VERB", "NOUN"};
  EXPECT_EQ(Extract(p, ParseFeature("src-nouns"), {}), 1u);
  EXPECT_EQ(Extract(p, ParseFeature("src-proper-nouns"), {}), 1u);
  // Prefix matching: a "N" prefix catches NOUN but not PROPN.
  EXPECT_EQ(Extract(p, CategoryFeature{Side::kSrc, Category::kNoun, CountMethod::kTagPrefix, "N"},
                    {}),
            1u);
  // Penn-style tags with a custom prefix.
  p.src_tags = Tokens{"NNP", "VBZ", "NNS"};
  EXPECT_EQ(Extract(p, CategoryFeature{Side::kSrc, Category::kNoun, CountMethod::kTagPrefix, "NN"},
                    {}),
            2u);
  EXPECT_TRUE(ThrowsCode([&] { Extract(p, ParseFeature("tgt-verbs"), {}); },
                         ErrorCode::kMissingTags));
}

TEST(ExtractTest, RankScopes) {
  const RankTable src = RankTable::FromRankedWords({"a", "b", "c", "d", "e"}, 1);
  const RankTable tgt = RankTable::FromRankedWords({"x", "y"}, 1);
  const SentencePair p = Pair({"a", "c"}, {"x"});
  FeatureResources r;
  r.src_ranks = &src;
  r.tgt_ranks = &tgt;
  EXPECT_EQ(Extract(p, RankFeature{RankScope::kSrc, 1}, r), 3u);
  EXPECT_EQ(Extract(p, RankFeature{RankScope::kTgt, 1}, r), 1u);
  EXPECT_EQ(Extract(p, RankFeature{RankScope::kMax, 1}, r), 3u);

  const RankTable combined = RankTable::FromRankedWords({"x", "a", "c"}, 1);
  r.combined_ranks = &combined;
  EXPECT_EQ(Extract(p, RankFeature{RankScope::kCombined, 1}, r), 3u);

  EXPECT_TRUE(ThrowsCode([&] { Extract(p, RankFeature{RankScope::kCombined, 1}, {}); },
                         ErrorCode::kMissingResource));
  EXPECT_TRUE(ThrowsCode([&] { Extract(p, RankFeature{RankScope::kSrc, 5000}, r); },
                         ErrorCode::kInvalidArgument));
}

TEST(ExtractTest, MaxRankDominatesEachSideProperty) {
  std::mt19937_64 gen(10);
  std::vector<std::string> vocab;
  for (int i = 0; i < 40; ++i) vocab.push_back("w" + std::to_string(i));
  const RankTable src = RankTable::FromRankedWords({vocab.begin(), vocab.begin() + 30}, 3);
  const RankTable tgt = RankTable::FromRankedWords({vocab.begin() + 10, vocab.end()}, 3);
  FeatureResources r;
  r.src_ranks = &src;
  r.tgt_ranks = &tgt;
  for (int trial = 0; trial < 500; ++trial) {
    Tokens s, t;
    for (std::size_t k = 1 + gen() % 5; k > 0; --k) s.push_back(vocab[gen() % 40]);
    for (std::size_t k = 1 + gen() % 5; k > 0; --k) t.push_back(vocab[gen() % 40]);
    const SentencePair p = Pair(s, t);
    const FeatureValue m = Extract(p, RankFeature{RankScope::kMax, 3}, r);
    ASSERT_GE(m, Extract(p, RankFeature{RankScope::kSrc, 3}, r));
    ASSERT_GE(m, Extract(p, RankFeature{RankScope::kTgt, 3}, r));
  }
}

TEST(ExtractAllTest, MatchesPerPairLoopOnRandomCorpus) {
  std::mt19937_64 gen(12);
  ParallelCorpus c;
  std::vector<Tokens> tags;
  const char* kTags[] = {"NOUN", "VERB", "PROPN", "CCONJ", "DET"};
  for (int i = 0; i < 10000; ++i) {
    Tokens s, t, tt;
    for (std::size_t k = 1 + gen() % 12; k > 0; --k) s.push_back("s" + std::to_string(gen() % 300));
    for (std::size_t k = 1 + gen() % 12; k > 0; --k) {
      t.push_back(gen() % 5 == 0 ? "and" : "t" + std::to_string(gen() % 300));
      tt.push_back(kTags[gen() % 5]);
    }
    c.Add(s, t);
    tags.push_back(tt);
  }
  c.AttachTags(Side::kTgt, tags);
  const RankTable ranks = BuildRankTable(c, RankScope::kTgt, 50);
  const Lexicon lex = Lexicon::EnglishConjunctions();
  FeatureResources r;
  r.tgt_ranks = &ranks;
  r.lexicon = &lex;
  for (const char* name : {"src-length", "tgt-conj", "tgt-verbs", "tgt-proper-nouns"}) {
    const FeatureKind kind = ParseFeature(name);
    const FeatureVector all = ExtractAll(c, kind, r);
    ASSERT_EQ(all.size(), c.size());
    EXPECT_EQ(all.name, name);
    for (std::size_t i = 0; i < c.size(); ++i) ASSERT_EQ(all[i], Extract(c[i], kind, r));
  }
  const FeatureKind rank{RankFeature{RankScope::kTgt, 50}};
  const FeatureVector all = ExtractAll(c, rank, r);
  for (std::size_t i = 0; i < c.size(); ++i) {
    // Independent oracle: look the words up one by one.
    std::uint32_t worst = 0;
    for (const auto& w : c[i].tgt_tokens) worst = std::max(worst, ranks.block_of(w));
    ASSERT_EQ(all[i], worst);
  }
}

TEST(ExtractAllTest, UntaggedCorpusFailsAtFirstPair) {
  ParallelCorpus c;
  c.Add({"a"}, {"b"});
  c.Add({"a"}, {"b"});
  try {
    ExtractAll(c, ParseFeature("tgt-nouns"), {});
    FAIL() << "expected MissingTags";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingTags);
    EXPECT_NE(std::string(e.what()).find("pair 0"), std::string::npos);
  }
}

TEST(ExtractStreamTest, MatchesExtractAll) {
  TempDir dir;
  WriteFile(dir / "s", "a b c\nd\ne f\n");
  WriteFile(dir / "t", "x\ny z w\nv u\n");
  WriteFile(dir / "tt", "x|NOUN\ny|NOUN z|VERB w|NOUN\nv|VERB u|ADJ\n");
  const ParallelCorpus c =
      LoadTagged(dir / "tt", "|", Side::kTgt, LoadParallel(dir / "s", dir / "t"));
  for (const char* name : {"src-length", "tgt-length", "tgt-nouns", "tgt-verbs"}) {
    ParallelReader reader(dir / "s", dir / "t", TagFiles{std::nullopt, dir / "tt", "|"});
    const FeatureVector streamed = ExtractStream(reader, ParseFeature(name), {});
    EXPECT_EQ(streamed.values, ExtractAll(c, ParseFeature(name), {}).values) << name;
  }
}

TEST(FeatureFileTest, RoundTrip) {
  const FeatureVector v{"tgt-length", {3, 0, 41, 4294967295u}};
  std::stringstream buf;
  WriteFeatureVector(buf, v);
  EXPECT_EQ(buf.str(), "#feature=tgt-length\n#n=4\n3\n0\n41\n4294967295\n");
  const FeatureVector back = ReadFeatureVector(buf);
  EXPECT_EQ(back.name, v.name);
  EXPECT_EQ(back.values, v.values);
}

TEST(FeatureFileTest, ReaderRejectsBadFiles) {
  const auto read = [](const std::string& text) {
    std::istringstream in(text);
    return ReadFeatureVector(in);
  };
  EXPECT_TRUE(ThrowsCode([&] { read("#n=3\n1\n2\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { read("1\n-2\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { read("1\n\n2\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { read("4294967296\n"); }, ErrorCode::kParse));
}

}  // namespace
}  // namespace corpsched
