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

#include <algorithm>
#include <stdexcept>

#include "detgram/text.h"

namespace detgram {

namespace {

bool IsSortedSubset(const std::vector<std::string> &sub,
                    const std::vector<std::string> &super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool Intersects(const std::vector<std::string> &a,
                const std::vector<std::string> &b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

void SortUnique(std::vector<std::string> *v) {
  std::sort(v->begin(), v->end());
  v->erase(std::unique(v->begin(), v->end()), v->end());
}

}  // namespace

LexicalMask LexicalMask::Literal(std::string text) {
  if (text.empty()) throw std::invalid_argument("empty literal");
  LexicalMask m;
  m.kind = Kind::kLiteral;
  m.literal = std::move(text);
  return m;
}

LexicalMask LexicalMask::Epsilon() {
  LexicalMask m;
  m.kind = Kind::kEpsilon;
  return m;
}

LexicalMask LexicalMask::AnyWord() {
  LexicalMask m;
  m.kind = Kind::kAnyWord;
  return m;
}

LexicalMask LexicalMask::Number() {
  LexicalMask m;
  m.kind = Kind::kNumber;
  return m;
}

LexicalMask LexicalMask::Pattern(std::optional<std::string> lemma,
                                 std::optional<Pos> pos,
                                 std::vector<std::string> required,
                                 std::vector<std::string> forbidden) {
  LexicalMask m;
  m.kind = Kind::kPattern;
  m.lemma = std::move(lemma);
  m.pos = pos;
  m.required = std::move(required);
  m.forbidden = std::move(forbidden);
  SortUnique(&m.required);
  SortUnique(&m.forbidden);
  if (!m.lemma && !m.pos && m.required.empty()) {
    throw std::invalid_argument(
        "pattern needs a lemma, a part of speech or a required feature");
  }
  if (m.lemma && m.lemma->empty()) throw std::invalid_argument("empty lemma");
  if (Intersects(m.required, m.forbidden)) {
    throw std::invalid_argument("feature both required and forbidden");
  }
  return m;
}

std::string LexicalMask::ToString() const {
  switch (kind) {
    case Kind::kLiteral:
      return literal;
    case Kind::kEpsilon:
      return "<E>";
    case Kind::kAnyWord:
      return "<MOT>";
    case Kind::kNumber:
      return "<NB>";
    case Kind::kPattern:
      break;
  }
  std::string out = "<";
  if (lemma) {
    out += *lemma;
    if (pos) out += ".";
  }
  if (pos) out += PosName(*pos);
  for (const std::string &f : required) out += "+" + f;
  for (const std::string &f : forbidden) out += "-" + f;
  out += ">";
  return out;
}

LexicalMask ParseMask(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty mask");
  if (text.front() != '<') return LexicalMask::Literal(std::string(text));
  if (text.size() < 3 || text.back() != '>') {
    throw std::invalid_argument("unterminated mask '" + std::string(text) + "'");
  }
  std::string_view body = text.substr(1, text.size() - 2);
  if (body == "E") return LexicalMask::Epsilon();
  if (body == "MOT") return LexicalMask::AnyWord();
  if (body == "NB") return LexicalMask::Number();

  // Head: "lemma.POS", "POS" or "lemma". A '.' lets the lemma contain '-'.
  size_t head_end;
  size_t dot = body.find('.');
  if (dot != std::string_view::npos) {
    head_end = body.find_first_of("+-", dot);
  } else {
    head_end = body.find_first_of("+-");
  }
  if (head_end == std::string_view::npos) head_end = body.size();
  std::string_view head = body.substr(0, head_end);

  std::optional<std::string> lemma;
  std::optional<Pos> pos;
  if (dot != std::string_view::npos && dot < head_end) {
    lemma = std::string(head.substr(0, dot));
    std::string_view code = head.substr(dot + 1);
    pos = ParsePos(code);
    if (!pos) {
      throw std::invalid_argument("unknown part of speech '" +
                                  std::string(code) + "'");
    }
  } else if (!head.empty()) {
    pos = ParsePos(head);
    if (!pos) lemma = std::string(head);
  }

  std::vector<std::string> required;
  std::vector<std::string> forbidden;
  size_t i = head_end;
  while (i < body.size()) {
    char sign = body[i];
    size_t next = body.find_first_of("+-", i + 1);
    if (next == std::string_view::npos) next = body.size();
    std::string_view feature = body.substr(i + 1, next - i - 1);
    if (feature.empty()) {
      throw std::invalid_argument("empty feature in '" + std::string(text) + "'");
    }
    (sign == '+' ? required : forbidden).emplace_back(feature);
    i = next;
  }
  return LexicalMask::Pattern(std::move(lemma), pos, std::move(required),
                              std::move(forbidden));
}

bool EntrySatisfies(const LexicalMask &pattern, const LexicalEntry &entry) {
  if (pattern.lemma && *pattern.lemma != entry.lemma) return false;
  if (pattern.pos && *pattern.pos != entry.pos) return false;
  if (!IsSortedSubset(pattern.required, entry.features)) return false;
  return !Intersects(pattern.forbidden, entry.features);
}

bool MatchMask(const LexicalMask &mask, const Token &token,
               const std::vector<const LexicalEntry *> &readings) {
  switch (mask.kind) {
    case LexicalMask::Kind::kLiteral:
      return token.surface == mask.literal ||
             FoldInitial(token.surface) == mask.literal;
    case LexicalMask::Kind::kEpsilon:
      return false;
    case LexicalMask::Kind::kAnyWord:
      return token.kind == TokenKind::kWord;
    case LexicalMask::Kind::kNumber:
      return token.kind == TokenKind::kNumber;
    case LexicalMask::Kind::kPattern:
      for (const LexicalEntry *entry : readings) {
        if (EntrySatisfies(mask, *entry)) return true;
      }
      return false;
  }
  return false;
}

bool MatchMask(const LexicalMask &mask, const Token &token,
               const Lexicon &lexicon) {
  if (mask.kind != LexicalMask::Kind::kPattern) {
    static const std::vector<const LexicalEntry *> kNone;
    return MatchMask(mask, token, kNone);
  }
  return MatchMask(mask, token, lexicon.Readings(token.surface));
}

AnalyzedText Analyze(std::vector<Token> tokens, const Lexicon &lexicon) {
  AnalyzedText text;
  text.readings.reserve(tokens.size());
  text.folded.reserve(tokens.size());
  for (const Token &token : tokens) {
    text.readings.push_back(lexicon.Readings(token.surface));
    text.folded.push_back(FoldInitial(token.surface));
  }
  text.tokens = std::move(tokens);
  return text;
}

AnalyzedText Analyze(std::string_view raw, const Lexicon &lexicon) {
  return Analyze(Tokenize(raw), lexicon);
}

}  // namespace detgram
