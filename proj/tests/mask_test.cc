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

#include "detgram/mask.h"

#include <gtest/gtest.h>

#include "detgram/lexicon.h"
#include "detgram/tokenizer.h"

namespace detgram {
namespace {

TEST(MaskTest, ParsesTheMaskSyntax) {
  EXPECT_EQ(ParseMask("<E>").kind, LexicalMask::Kind::kEpsilon);
  EXPECT_EQ(ParseMask("<MOT>").kind, LexicalMask::Kind::kAnyWord);
  EXPECT_EQ(ParseMask("<NB>").kind, LexicalMask::Kind::kNumber);
  EXPECT_EQ(ParseMask("partie").kind, LexicalMask::Kind::kLiteral);

  LexicalMask m = ParseMask("<N+Dnom-p>");
  EXPECT_EQ(m.kind, LexicalMask::Kind::kPattern);
  EXPECT_EQ(m.pos, Pos::kN);
  EXPECT_FALSE(m.lemma.has_value());
  EXPECT_EQ(m.required, (std::vector<std::string>{"Dnom"}));
  EXPECT_EQ(m.forbidden, (std::vector<std::string>{"p"}));

  LexicalMask lemma = ParseMask("<vis-à-vis.PREP>");
  EXPECT_EQ(lemma.lemma, "vis-à-vis");
  EXPECT_EQ(lemma.pos, Pos::kPrep);
  EXPECT_EQ(ParseMask("<partie>").lemma, "partie");
}

TEST(MaskTest, ToStringRoundTrips) {
  for (const char *text : {"<E>", "<MOT>", "<NB>", "<N+Dnom>", "<A>",
                           "<partie.N+f-p>", "<ADV>", "des"}) {
    EXPECT_EQ(ParseMask(text).ToString(), text);
    EXPECT_EQ(ParseMask(ParseMask(text).ToString()), ParseMask(text));
  }
}

TEST(MaskTest, RejectsMalformedMasks) {
  EXPECT_THROW(ParseMask(""), std::invalid_argument);
  EXPECT_THROW(ParseMask("<N"), std::invalid_argument);
  EXPECT_THROW(ParseMask("<x.FOO>"), std::invalid_argument);
  EXPECT_THROW(ParseMask("<N+>"), std::invalid_argument);
}

TEST(MaskTest, MatchesThroughAnyReading) {
  Lexicon lexicon(ParseLexicon(
      "partie,partie.N+Dnom+f+s\npartie,partir.V+PP\nbonne,bon.A+f+s\n"));
  AnalyzedText text = Analyze("Partie bonne 12 ,", lexicon);
  ASSERT_EQ(text.size(), 4u);
  EXPECT_TRUE(text.Matches(ParseMask("<N+Dnom>"), 0));
  EXPECT_TRUE(text.Matches(ParseMask("<partir.V>"), 0));
  EXPECT_FALSE(text.Matches(ParseMask("<N-Dnom>"), 0));
  EXPECT_TRUE(text.Matches(ParseMask("partie"), 0));
  EXPECT_FALSE(text.Matches(ParseMask("Partie"), 1));
  EXPECT_TRUE(text.Matches(ParseMask("<A>"), 1));
  EXPECT_TRUE(text.Matches(ParseMask("<NB>"), 2));
  EXPECT_FALSE(text.Matches(ParseMask("<MOT>"), 2));
  EXPECT_TRUE(text.Matches(ParseMask("<MOT>"), 1));
  EXPECT_FALSE(text.Matches(ParseMask("<MOT>"), 3));
  EXPECT_TRUE(text.Matches(ParseMask(","), 3));
}

TEST(MaskTest, FastLiteralPathAgreesWithMatchMask) {
  Lexicon lexicon;
  AnalyzedText text = Analyze("Les les LES l'", lexicon);
  for (size_t i = 0; i < text.size(); ++i) {
    for (const char *lit : {"les", "Les", "LES", "lES", "l'"}) {
      LexicalMask mask = LexicalMask::Literal(lit);
      EXPECT_EQ(text.Matches(mask, i), MatchMask(mask, text.tokens[i], lexicon))
          << i << " " << lit;
    }
  }
  // Capitalized sentence starts match the lower-case literal; full
  // capitals do not.
  EXPECT_TRUE(text.Matches(LexicalMask::Literal("les"), 0));
  EXPECT_TRUE(text.Matches(LexicalMask::Literal("les"), 1));
  EXPECT_FALSE(text.Matches(LexicalMask::Literal("les"), 2));
  EXPECT_FALSE(text.Matches(LexicalMask::Literal("Les"), 1));
}

}  // namespace
}  // namespace detgram
