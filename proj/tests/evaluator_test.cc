// Copyright 2026 The Detgram Authors.
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

#include "detgram/evaluator.h"

#include <gtest/gtest.h>

#include "detgram/errors.h"
#include "json.hpp"
#include "support/test_data.h"

namespace detgram {
namespace {

Span S(size_t start, size_t end, Tag tag = Tag::kD) { return {tag, start, end}; }

GoldCorpus Gold(std::string raw, std::vector<Span> spans) {
  return GoldCorpus{std::move(raw), std::move(spans)};
}

TEST(ParseAnnotatedTest, StripsTagsAndRecordsSpans) {
  std::string text = "obtenir <d>de</d> meilleures conditions";
  GoldCorpus gold = ParseAnnotated(text);
  EXPECT_EQ(gold.raw, "obtenir de meilleures conditions");
  ASSERT_EQ(gold.spans.size(), 1u);
  EXPECT_EQ(gold.spans[0], S(8, 10));
  EXPECT_EQ(SerializeAnnotated(gold), text);
}

TEST(ParseAnnotatedTest, PlainText) {
  GoldCorpus gold = ParseAnnotated("a < b > c");
  EXPECT_EQ(gold.raw, "a < b > c");
  EXPECT_TRUE(gold.spans.empty());
}

TEST(ParseAnnotatedTest, FormatErrors) {
  EXPECT_THROW(ParseAnnotated("<d>un <d>deux</d></d>"), FormatError);
  EXPECT_THROW(ParseAnnotated("<d>un</dd>"), FormatError);
  EXPECT_THROW(ParseAnnotated("<d>un"), FormatError);
  EXPECT_THROW(ParseAnnotated("un</d>"), FormatError);
  EXPECT_THROW(ParseAnnotated("<x>un</x>"), FormatError);
  EXPECT_THROW(ParseAnnotated("<d></d>"), FormatError);
  try {
    ParseAnnotated("abc <d>un <ad>");
    FAIL();
  } catch (const FormatError &e) {
    EXPECT_EQ(e.offset(), 10u);
  }
}

TEST(ParseAnnotatedTest, SameTextCheck) {
  EXPECT_NO_THROW(CheckSameText("abc", "abc"));
  try {
    CheckSameText("abcd", "abxd");
    FAIL();
  } catch (const FormatError &e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(CheckSameText("abc", "ab"), FormatError);
}

TEST(AlignTest, IdenticalSpansMatchInBothModes) {
  std::vector<Span> spans = {S(0, 3), S(5, 9, Tag::kAd), S(10, 12, Tag::kDd)};
  for (AlignMode mode : {AlignMode::kMerged, AlignMode::kPerTag}) {
    Alignment a = Align(spans, spans, mode);
    EXPECT_EQ(a.matched.size(), 3u);
    EXPECT_TRUE(a.tag_mismatch.empty() && a.missed.empty() &&
                a.spurious.empty() && a.boundary_gold.empty());
  }
}

TEST(AlignTest, TagMismatch) {
  std::vector<Span> gold = {S(3, 10)};
  std::vector<Span> hyp = {S(3, 10, Tag::kDd)};
  EXPECT_EQ(Align(gold, hyp, AlignMode::kMerged).matched.size(), 1u);
  Alignment per_tag = Align(gold, hyp, AlignMode::kPerTag);
  EXPECT_TRUE(per_tag.matched.empty());
  ASSERT_EQ(per_tag.tag_mismatch.size(), 1u);
  EXPECT_EQ(per_tag.tag_mismatch[0], std::make_pair(size_t{0}, size_t{0}));
}

TEST(AlignTest, ResidualsArePartitioned) {
  std::vector<Span> gold = {S(0, 5), S(8, 12)};
  std::vector<Span> hyp = {S(0, 5), S(8, 13), S(20, 24)};
  Alignment a = Align(gold, hyp, AlignMode::kMerged);
  EXPECT_EQ(a.matched.size(), 1u);
  EXPECT_EQ(a.boundary_gold, (std::vector<size_t>{1}));
  EXPECT_EQ(a.boundary_hyp, (std::vector<size_t>{1}));
  EXPECT_TRUE(a.missed.empty());
  EXPECT_EQ(a.spurious, (std::vector<size_t>{2}));
  EvalReport r = Evaluate(Gold(std::string(30, 'x'), gold), hyp);
  EXPECT_EQ(r.merged.matched, 1u);
  EXPECT_DOUBLE_EQ(r.merged.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.merged.recall, 0.5);
}

TEST(ScoreTest, EmptyDenominators) {
  Score s = MakeScore(0, 0, 0);
  EXPECT_EQ(s.precision, 1.0);
  EXPECT_EQ(s.recall, 1.0);
  EvalReport r = Evaluate(Gold("abcdef", {S(0, 3)}), {});
  EXPECT_EQ(r.merged.precision, 1.0);
  EXPECT_EQ(r.merged.recall, 0.0);
}

TEST(ScoreTest, SelfComparisonIsPerfect) {
  GoldCorpus gold = ParseAnnotated(testing::ReadData("corpus/reference.txt"));
  EvalReport r = Evaluate(gold, gold.spans);
  EXPECT_EQ(r.merged.precision, 1.0);
  EXPECT_EQ(r.merged.recall, 1.0);
  for (Tag tag : {Tag::kD, Tag::kAd, Tag::kDd}) {
    EXPECT_EQ(r.ForTag(tag).precision, 1.0);
    EXPECT_EQ(r.ForTag(tag).recall, 1.0);
  }
}

TEST(ScoreTest, SwapExchangesPrecisionAndRecall) {
  std::string raw(40, 'x');
  std::vector<Span> a = {S(0, 4), S(6, 9, Tag::kDd), S(12, 20, Tag::kAd)};
  std::vector<Span> b = {S(0, 4, Tag::kDd), S(6, 9, Tag::kDd), S(25, 30)};
  EvalReport ab = Evaluate(Gold(raw, a), b);
  EvalReport ba = Evaluate(Gold(raw, b), a);
  EXPECT_EQ(ab.merged.precision, ba.merged.recall);
  EXPECT_EQ(ab.merged.recall, ba.merged.precision);
  EXPECT_GE(ab.merged.matched, ab.ForTag(Tag::kD).matched +
                                   ab.ForTag(Tag::kAd).matched +
                                   ab.ForTag(Tag::kDd).matched);
}

TEST(ScoreTest, HypothesisBeyondTheText) {
  EXPECT_THROW(Evaluate(Gold("abc", {}), {S(1, 9)}), std::invalid_argument);
}

TEST(ScoreTest, Rounding) {
  EXPECT_EQ(RoundPercent(1, 3), 33);
  EXPECT_EQ(RoundPercent(2, 3), 67);
  EXPECT_EQ(RoundPercent(1, 8), 13);  // 12.5 rounds half up
  EXPECT_EQ(RoundPercent(0, 0), 0);
  EXPECT_EQ(ScorePercent(0, 0), 100);
  EXPECT_EQ(ScorePercent(86, 100), 86);
}

// Counts frozen from an independent text search over the corpus file.
TEST(DistributionTest, FixtureCorpus) {
  TagDistribution d =
      Distribution(ParseAnnotated(testing::ReadData("corpus/reference.txt")));
  EXPECT_EQ(d.total, 72u);
  EXPECT_EQ(d.counts, (std::array<size_t, 3>{53, 6, 13}));
  EXPECT_EQ(d.percents, (std::array<int, 3>{74, 8, 18}));
}

TEST(DistributionTest, EmptyCorpus) {
  TagDistribution d = Distribution(GoldCorpus{});
  EXPECT_EQ(d.total, 0u);
  EXPECT_EQ(d.percents, (std::array<int, 3>{0, 0, 0}));
  EXPECT_EQ(FormatDistribution(d),
            "Reference annotations\t0\n<d>\t0\t0%\n<ad>\t0\t0%\n<dd>\t0\t0%\n");
}

TEST(ReportTest, FrozenReportForTheFrozenHypothesis) {
  GoldCorpus gold = ParseAnnotated(testing::ReadData("corpus/reference.txt"));
  GoldCorpus hyp = ParseAnnotated(testing::ReadData("corpus/hypothesis.txt"));
  CheckSameText(gold.raw, hyp.raw);
  EvalReport r = Evaluate(gold, hyp.spans);
  EXPECT_EQ(FormatReport(r, gold, hyp.spans, ReportMode::kBoth),
            testing::ReadData("corpus/expected_report.txt"));
  EXPECT_EQ(ScorePercent(r.merged.matched, r.merged.hyp), 93);
  EXPECT_EQ(ScorePercent(r.merged.matched, r.merged.gold), 94);
}

TEST(ReportTest, ModesSelectColumns) {
  GoldCorpus gold = ParseAnnotated("<d>un</d> x");
  EvalReport r = Evaluate(gold, gold.spans);
  std::string merged = FormatReport(r, gold, gold.spans, ReportMode::kMerged);
  std::string per_tag = FormatReport(r, gold, gold.spans, ReportMode::kPerTag);
  EXPECT_NE(merged.find("\tAll"), std::string::npos);
  EXPECT_EQ(merged.find("aDet"), std::string::npos);
  EXPECT_EQ(per_tag.find("\tAll"), std::string::npos);
  EXPECT_NE(per_tag.find("deDet"), std::string::npos);
  EXPECT_EQ(merged.rfind("Comparison between parser output and manual "
                         "annotation\n",
                         0),
            0u);
}

TEST(ReportTest, JsonDump) {
  GoldCorpus gold = ParseAnnotated("<d>un</d> x <dd>de</dd> y");
  std::vector<Span> hyp = {gold.spans[0]};
  EvalReport r = Evaluate(gold, hyp);
  nlohmann::json j =
      nlohmann::json::parse(FormatReportJson(r, gold, hyp, ReportMode::kBoth));
  EXPECT_EQ(j["mode"], "both");
  EXPECT_EQ(j["merged"]["reference"], 2);
  EXPECT_EQ(j["merged"]["matched"], 1);
  EXPECT_EQ(j["merged"]["recall"], 0.5);
  EXPECT_EQ(j["per_tag"]["dd"]["recall"], 0.0);
  ASSERT_EQ(j["errors"].size(), 1u);
  EXPECT_EQ(j["errors"][0]["kind"], "missed");
  EXPECT_EQ(j["errors"][0]["text"], "de");
}

}  // namespace
}  // namespace detgram
