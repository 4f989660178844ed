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

#ifndef DETGRAM_MASK_H_
#define DETGRAM_MASK_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "detgram/lexicon.h"
#include "detgram/tokenizer.h"

namespace detgram {

// A pattern over text tokens, written in grammar files as
//
//   le            literal word (an initial capital of the token is folded)
//   <E>           empty word, never consumes a token
//   <MOT>         any word token
//   <NB>          any number token
//   <N>           any word with a noun reading
//   <prêt.N>      lemma and part of speech
//   <N+m-Hum>     required (+) and forbidden (-) features
//   <partie>      lemma only
struct LexicalMask {
  enum class Kind { kLiteral, kEpsilon, kAnyWord, kNumber, kPattern };

  Kind kind = Kind::kLiteral;
  std::string literal;
  std::optional<std::string> lemma;
  std::optional<Pos> pos;
  std::vector<std::string> required;   // sorted
  std::vector<std::string> forbidden;  // sorted

  static LexicalMask Literal(std::string text);
  static LexicalMask Epsilon();
  static LexicalMask AnyWord();
  static LexicalMask Number();
  static LexicalMask Pattern(std::optional<std::string> lemma,
                             std::optional<Pos> pos,
                             std::vector<std::string> required = {},
                             std::vector<std::string> forbidden = {});

  bool consuming() const { return kind != Kind::kEpsilon; }

  // Canonical text form; ParseMask(ToString()) == *this.
  std::string ToString() const;

  bool operator==(const LexicalMask &other) const = default;
};

// Parses the text forms listed above. Throws std::invalid_argument.
LexicalMask ParseMask(std::string_view text);

// True when the entry satisfies every constraint of a pattern mask.
bool EntrySatisfies(const LexicalMask &pattern, const LexicalEntry &entry);

// Decides a mask against one token given the token's dictionary readings.
// A pattern holds when at least one reading satisfies it.
bool MatchMask(const LexicalMask &mask, const Token &token,
               const std::vector<const LexicalEntry *> &readings);

bool MatchMask(const LexicalMask &mask, const Token &token,
               const Lexicon &lexicon);

// Tokens of one text with their dictionary readings looked up once.
struct AnalyzedText {
  std::vector<Token> tokens;
  std::vector<std::vector<const LexicalEntry *>> readings;
  // FoldInitial of each surface, precomputed by Analyze; may be left empty.
  std::vector<std::string> folded;

  size_t size() const { return tokens.size(); }
  bool Matches(const LexicalMask &mask, size_t index) const {
    if (mask.kind == LexicalMask::Kind::kLiteral && folded.size() == size()) {
      return tokens[index].surface == mask.literal ||
             folded[index] == mask.literal;
    }
    return MatchMask(mask, tokens[index], readings[index]);
  }
};

AnalyzedText Analyze(std::vector<Token> tokens, const Lexicon &lexicon);
AnalyzedText Analyze(std::string_view raw, const Lexicon &lexicon);

}  // namespace detgram

#endif  // DETGRAM_MASK_H_
