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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "corpsched/error.hpp"
#include "corpsched/schedule.hpp"
#include "test_support.hpp"

namespace corpsched {
namespace {

using testing::ThrowsCode;

ScheduleMeta Meta(Strategy strategy, std::size_t batch_size, std::size_t n) {
  ScheduleMeta meta;
  meta.strategy = strategy;
  meta.batch_size = batch_size;
  meta.seed = 7;
  meta.n = n;
  return meta;
}

TEST(ScheduleTest, FromStreamCutsSequentially) {
  const Schedule s = Schedule::FromStream(Meta(Strategy::kShuffle, 2, 5), {4, 3, 2, 1, 0});
  ASSERT_EQ(s.num_batches(), 3u);
  EXPECT_EQ(std::vector<ExampleId>(s.batch(0).begin(), s.batch(0).end()),
            (std::vector<ExampleId>{4, 3}));
  EXPECT_EQ(std::vector<ExampleId>(s.batch(2).begin(), s.batch(2).end()),
            (std::vector<ExampleId>{0}));
  EXPECT_EQ(s.num_examples(), 5u);
  EXPECT_EQ(s.annotation(0).kind, Annotation::Kind::kNone);
}

TEST(ScheduleTest, FromStreamTagsBatchWithPhaseOfFirstExample) {
  const std::vector<std::uint32_t> phases{1, 1, 2, 2, 3};
  const Schedule s =
      Schedule::FromStream(Meta(Strategy::kCurriculum, 3, 5), {0, 1, 2, 3, 4}, phases);
  ASSERT_EQ(s.num_batches(), 2u);
  EXPECT_EQ(s.annotation(0), Annotation::Phase(1));
  EXPECT_EQ(s.annotation(1), Annotation::Phase(2));
}

TEST(ScheduleTest, FromStreamRejectsZeroBatchSize) {
  EXPECT_TRUE(ThrowsCode([] { Schedule::FromStream(Meta(Strategy::kShuffle, 0, 1), {0}); },
                         ErrorCode::kInvalidArgument));
}

TEST(ScheduleTest, AddBatchRejectsEmptyBatch) {
  Schedule s(Meta(Strategy::kBucket, 2, 0));
  EXPECT_TRUE(ThrowsCode([&] { s.AddBatch({}); }, ErrorCode::kInvalidSchedule));
}

TEST(ScheduleTest, SerializedFormIsExact) {
  ScheduleMeta meta = Meta(Strategy::kBucket, 2, 3);
  meta.feature = "tgt-length";
  meta.thresholds = "8,12";
  Schedule s(meta);
  const std::vector<ExampleId> a{2, 0};
  const std::vector<ExampleId> b{1};
  s.AddBatch(a, Annotation::Bucket(1));
  s.AddBatch(b, Annotation::Bucket(3));
  EXPECT_EQ(ScheduleToString(s),
            "#strategy=bucket\n#batch_size=2\n#seed=7\n#n=3\n#feature=tgt-length\n"
            "#thresholds=8,12\n#epoch=1\n2 0\t@bucket=1\n1\t@bucket=3\n");
}

TEST(ScheduleTest, DescendingOrderHeaderRoundTrips) {
  ScheduleMeta meta = Meta(Strategy::kSorted, 1, 1);
  meta.descending = true;
  const Schedule s = Schedule::FromStream(meta, {0});
  const std::string text = ScheduleToString(s);
  EXPECT_NE(text.find("#order=descending\n"), std::string::npos);
  std::istringstream in(text);
  EXPECT_EQ(ReadSchedule(in), s);
}

TEST(ScheduleTest, RoundTripPreservesEverything) {
  const std::vector<std::uint32_t> phases{1, 2, 2, 3, 3, 3, 3};
  ScheduleMeta meta = Meta(Strategy::kCurriculum, 3, 7);
  meta.seed = 18446744073709551615ULL;
  meta.epoch = 2;
  const Schedule s = Schedule::FromStream(meta, {6, 5, 4, 3, 2, 1, 0}, phases);
  std::istringstream in(ScheduleToString(s));
  const Schedule back = ReadSchedule(in);
  EXPECT_EQ(back, s);
  EXPECT_EQ(ScheduleToString(back), ScheduleToString(s));
}

TEST(ScheduleTest, ReaderIgnoresUnknownHeadersAndCrlf) {
  std::istringstream in("#strategy=shuffle\r\n#batch_size=2\r\n#note=hello\r\n0 1\r\n2\r\n");
  const Schedule s = ReadSchedule(in);
  EXPECT_EQ(s.meta().batch_size, 2u);
  ASSERT_EQ(s.num_batches(), 2u);
  EXPECT_EQ(s.batch(1)[0], 2u);
}

TEST(ScheduleTest, ReaderRejectsMalformedInput) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return ReadSchedule(in);
  };
  EXPECT_TRUE(ThrowsCode([&] { parse("#batch_size=x\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { parse("0 1\n#seed=1\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { parse("0 a\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { parse("0\t@colour=3\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { parse("\t@phase=1\n"); }, ErrorCode::kParse));
  EXPECT_TRUE(ThrowsCode([&] { parse("#strategy=random\n"); }, ErrorCode::kInvalidArgument));
}

TEST(ScheduleTest, StrategyNamesRoundTrip) {
  for (auto s : {Strategy::kShuffle, Strategy::kBucket, Strategy::kCurriculum,
                 Strategy::kReverseCurriculum, Strategy::kSorted}) {
    EXPECT_EQ(ParseStrategy(StrategyName(s)), s);
  }
}

}  // namespace
}  // namespace corpsched
