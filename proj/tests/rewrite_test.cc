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

#include "detgram/rewrite.h"

#include <gtest/gtest.h>

#include "detgram/errors.h"
#include "detgram/matcher.h"
#include "support/rtn_enumerator.h"
#include "support/test_data.h"

namespace detgram {
namespace {

using testing::LabelEnumerator;
using testing::LabelSeq;
using testing::Words;

// A one-graph main accepting exactly the given words.
GrammarSet Chain(std::initializer_list<const char *> words) {
  std::string text = "graph M @main\n  nodes " +
                     std::to_string(words.size() + 1) + "\n  initial 0\n" +
                     "  final " + std::to_string(words.size()) + "\n";
  int i = 0;
  for (const char *w : words) {
    text += "  " + std::to_string(i) + " " + w + " " + std::to_string(i + 1) +
            "\n";
    ++i;
  }
  return ParseGrammar(text);
}

std::set<LabelSeq> SurfaceLanguage(const GrammarSet &normalized) {
  GrammarSet surface =
      Surfaceize(normalized, ParseRewriteTable(testing::ReadData("rewrites.txt")))
          .grammar;
  return LabelEnumerator(surface, kDefaultDepthBound, 8).Enumerate("M");
}

TEST(RewriteTest, ParsesTheTable) {
  std::vector<RewriteRule> rules =
      ParseRewriteTable("# c\nà+le -> au\nde -> d' if-vowel\n");
  ASSERT_EQ(rules.size(), 2u);
  EXPECT_EQ(rules[0].from, (std::vector<std::string>{"à", "le"}));
  EXPECT_EQ(rules[0].to, (std::vector<std::string>{"au"}));
  EXPECT_FALSE(rules[0].if_vowel);
  EXPECT_TRUE(rules[1].if_vowel);
  EXPECT_EQ(rules[1].ToString(), "de -> d' if-vowel");
  EXPECT_EQ(ParseRewriteTable(rules[0].ToString())[0], rules[0]);
}

TEST(RewriteTest, RejectsMalformedRules) {
  EXPECT_THROW(ParseRewriteTable("à le au"), ParseError);
  EXPECT_THROW(ParseRewriteTable("-> au"), ParseError);
  EXPECT_THROW(ParseRewriteTable("à le -> au"), ParseError);
}

TEST(RewriteTest, Contractions) {
  EXPECT_EQ(SurfaceLanguage(Chain({"à", "le", "marché"})),
            (std::set<LabelSeq>{Words({"au", "marché"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"à", "les", "besoins"})),
            (std::set<LabelSeq>{Words({"aux", "besoins"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"de", "le", "temps"})),
            (std::set<LabelSeq>{Words({"du", "temps"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"de", "les", "prêts"})),
            (std::set<LabelSeq>{Words({"des", "prêts"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"de", "des", "mesures"})),
            (std::set<LabelSeq>{Words({"de", "mesures"})}));
}

TEST(RewriteTest, ElisionsBeforeVowels) {
  EXPECT_EQ(SurfaceLanguage(Chain({"de", "un", "côté"})),
            (std::set<LabelSeq>{Words({"d'", "un", "côté"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"à", "le", "Est"})),
            (std::set<LabelSeq>{Words({"à", "l'", "Est"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"de", "le", "ordre"})),
            (std::set<LabelSeq>{Words({"de", "l'", "ordre"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"de", "des", "autres"})),
            (std::set<LabelSeq>{Words({"d'", "autres"})}));
  EXPECT_EQ(SurfaceLanguage(Chain({"la", "heure"})),
            (std::set<LabelSeq>{Words({"l'", "heure"})}));
}

TEST(RewriteTest, UndecidedContextKeepsBothForms) {
  // At the end of a main graph the next word is unknown.
  EXPECT_EQ(SurfaceLanguage(Chain({"de", "le"})),
            (std::set<LabelSeq>{Words({"du"}), Words({"de", "l'"})}));
  // Before a mask, likewise.
  std::set<LabelSeq> before_mask = SurfaceLanguage(Chain({"la", "<N>"}));
  EXPECT_EQ(before_mask.size(), 2u);
}

TEST(RewriteTest, RewritesAcrossGraphBoundaries) {
  GrammarSet g = ParseGrammar(R"(graph M @main
  nodes 3
  initial 0
  final 2
  0 à 1
  1 :Art 2

graph Art
  nodes 3
  initial 0
  final 2
  0 le 1
  0 les 1
  1 marché 2
)");
  EXPECT_EQ(SurfaceLanguage(g),
            (std::set<LabelSeq>{Words({"au", "marché"}),
                                Words({"aux", "marché"})}));
}

TEST(RewriteTest, OutputsKeepTheirPlaceAfterTheRewrite) {
  GrammarSet g = ParseGrammar(R"(graph M @main
  nodes 5
  initial 0
  final 4
  0 {<dd>} 1
  1 de 2
  2 le 3
  3 {</dd>} 4
)");
  GrammarSet surface =
      Surfaceize(g, ParseRewriteTable(testing::ReadData("rewrites.txt")))
          .grammar;
  Lexicon lexicon;
  AnalyzedText text = Analyze("du temps", lexicon);
  RtnInterpreter rtn(surface);
  std::vector<PathResult> paths = rtn.Run("M", text, 0);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].end, 1u);
  EXPECT_EQ(paths[0].emissions,
            (std::vector<Emission>{{0, "<dd>"}, {1, "</dd>"}}));
}

TEST(RewriteTest, OverlappingRulesAreReported) {
  SurfaceResult result =
      Surfaceize(Chain({"de", "le", "ordre"}),
                 ParseRewriteTable(testing::ReadData("rewrites.txt")));
  ASSERT_FALSE(result.diagnostics.empty());
  for (const Diagnostic &d : result.diagnostics) {
    EXPECT_EQ(d.severity, Diagnostic::Severity::kWarning);
    EXPECT_EQ(d.code, "rewrite-overlap");
  }
  EXPECT_FALSE(HasErrors(result.diagnostics));
}

TEST(RewriteTest, SurfaceImageOracleOnTheFixtureGrammar) {
  GrammarSet normalized = testing::NormalizedGrammar();
  std::vector<RewriteRule> rules =
      ParseRewriteTable(testing::ReadData("rewrites.txt"));
  GrammarSet surface = Surfaceize(normalized, rules).grammar;
  LabelEnumerator before(normalized, kDefaultDepthBound, 4);
  LabelEnumerator after(surface, kDefaultDepthBound, 4);
  for (const std::string &main : normalized.mains()) {
    std::set<LabelSeq> accepted = after.Enumerate(main);
    for (const LabelSeq &seq : before.Enumerate(main)) {
      for (const LabelSeq &image : testing::SurfaceImages(rules, seq)) {
        if (image.size() > 4) continue;
        EXPECT_TRUE(accepted.count(image)) << main;
      }
    }
  }
}

}  // namespace
}  // namespace detgram
