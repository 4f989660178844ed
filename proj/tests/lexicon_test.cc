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

#include "detgram/lexicon.h"

#include <gtest/gtest.h>

#include "detgram/errors.h"
#include "support/test_data.h"

namespace detgram {
namespace {

TEST(LexiconTest, ParsesEntriesWithFeatures) {
  std::vector<LexicalEntry> entries =
      ParseLexicon("# comment\n\npartie,partie.N+Dnom+f+s\nde,de.PREP\n");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].surface, "partie");
  EXPECT_EQ(entries[0].pos, Pos::kN);
  EXPECT_TRUE(entries[0].HasFeature("Dnom"));
  EXPECT_FALSE(entries[0].HasFeature("m"));
  EXPECT_EQ(FormatEntry(entries[0]), "partie,partie.N+Dnom+f+s");
  EXPECT_EQ(entries[1].pos, Pos::kPrep);
}

TEST(LexiconTest, RejectsMalformedLines) {
  EXPECT_THROW(ParseLexicon("partie.N"), ParseError);
  EXPECT_THROW(ParseLexicon("partie,partie"), ParseError);
  EXPECT_THROW(ParseLexicon("partie,partie.XYZ"), ParseError);
  EXPECT_THROW(ParseLexicon("partie,partie.N+"), ParseError);
  try {
    ParseLexicon("a,a.N\nb,b.Q\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LexiconTest, PosCodesRoundTrip) {
  for (Pos pos : {Pos::kN, Pos::kA, Pos::kV, Pos::kAdv, Pos::kDet,
                  Pos::kPrep, Pos::kPro, Pos::kConj, Pos::kIntj, Pos::kX}) {
    EXPECT_EQ(ParsePos(PosName(pos)), pos);
  }
  EXPECT_FALSE(ParsePos("NOUN").has_value());
}

TEST(LexiconTest, ReadingsFoldCapitals) {
  Lexicon lexicon(ParseLexicon("temps,temps.N+m\nocde,ocde.N\n"));
  EXPECT_EQ(lexicon.Readings("temps").size(), 1u);
  EXPECT_EQ(lexicon.Readings("Temps").size(), 1u);
  EXPECT_EQ(lexicon.Readings("OCDE").size(), 1u);
  EXPECT_TRUE(lexicon.Readings("inconnu").empty());
}

TEST(LexiconTest, FixtureLexiconDisambiguationFacts) {
  Lexicon lexicon = testing::FixtureLexicon();
  auto has_pos = [&](const char *word, Pos pos) {
    for (const LexicalEntry *e : lexicon.Readings(word)) {
      if (e->pos == pos) return true;
    }
    return false;
  };
  EXPECT_TRUE(has_pos("temps", Pos::kN));
  EXPECT_TRUE(has_pos("semblent", Pos::kV));
  EXPECT_FALSE(has_pos("semblent", Pos::kN));
  EXPECT_TRUE(has_pos("très", Pos::kAdv));
  EXPECT_TRUE(has_pos("bonnes", Pos::kA));
  EXPECT_TRUE(has_pos("idées", Pos::kN));
}

}  // namespace
}  // namespace detgram
