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

#include "detgram/tokenizer.h"

#include <array>

#include "detgram/text.h"

namespace detgram {

namespace {

bool IsSpace(char32_t cp) {
  switch (cp) {
    case ' ':
    case '\t':
    case '\n':
    case '\r':
    case '\f':
    case '\v':
    case 0xA0:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Separators allowed between digit groups of one number.
bool IsDigitGroupSeparator(char32_t cp) {
  return cp == ' ' || cp == 0xA0 || cp == 0x2009 || cp == 0x202F;
}

bool IsDigit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool IsApostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

bool IsLetter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp == kReplacementChar) return false;
  if (cp < 0xC0) return false;  // Latin-1 punctuation and symbols.
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE10 && cp <= 0xFE6F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF20) return false;
  if (cp >= 0x1F000) return false;  // emoji and pictographs
  return true;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool AtEnd(size_t pos) const { return pos >= text_.size(); }

  // Code point at pos, with the offset just past it.
  char32_t Peek(size_t pos, size_t *next) const {
    *next = pos;
    return DecodeUtf8(text_, next);
  }

  size_t SkipLetters(size_t pos) const {
    while (!AtEnd(pos)) {
      size_t next;
      if (!IsLetter(Peek(pos, &next))) break;
      pos = next;
    }
    return pos;
  }

  size_t SkipDigits(size_t pos, int *count) const {
    *count = 0;
    while (!AtEnd(pos) && IsDigit(static_cast<unsigned char>(text_[pos]))) {
      ++pos;
      ++*count;
    }
    return pos;
  }

 private:
  std::string_view text_;
};

}  // namespace

bool IsElidedClitic(std::string_view word) {
  static constexpr std::array<std::string_view, 9> kClitics = {
      "l", "d", "j", "qu", "n", "s", "c", "m", "t"};
  std::string lower = ToLower(word);
  for (std::string_view clitic : kClitics) {
    if (lower == clitic) return true;
  }
  return false;
}

const char *TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord:
      return "word";
    case TokenKind::kNumber:
      return "number";
    case TokenKind::kPunct:
      return "punct";
  }
  return "?";
}

std::vector<Token> Tokenize(std::string_view raw) {
  std::vector<Token> tokens;
  Scanner scanner(raw);
  size_t pos = 0;
  auto emit = [&](size_t start, size_t end, TokenKind kind) {
    tokens.push_back(
        Token{std::string(raw.substr(start, end - start)), start, end, kind});
  };

  while (!scanner.AtEnd(pos)) {
    size_t next;
    char32_t cp = scanner.Peek(pos, &next);
    if (IsSpace(cp)) {
      pos = next;
      continue;
    }

    if (IsLetter(cp)) {
      size_t start = pos;
      size_t end = scanner.SkipLetters(next);
      // Hyphens join letter runs on both sides.
      while (!scanner.AtEnd(end) && raw[end] == '-') {
        size_t after;
        if (scanner.AtEnd(end + 1) || !IsLetter(scanner.Peek(end + 1, &after)))
          break;
        end = scanner.SkipLetters(after);
      }
      if (!scanner.AtEnd(end)) {
        size_t after;
        char32_t c = scanner.Peek(end, &after);
        if (IsApostrophe(c) && IsElidedClitic(raw.substr(start, end - start))) {
          end = after;
        }
      }
      emit(start, end, TokenKind::kWord);
      pos = end;
      continue;
    }

    if (IsDigit(cp)) {
      size_t start = pos;
      int count;
      size_t end = scanner.SkipDigits(pos, &count);
      for (;;) {
        if (scanner.AtEnd(end)) break;
        size_t after_sep;
        if (!IsDigitGroupSeparator(scanner.Peek(end, &after_sep))) break;
        size_t group_end = scanner.SkipDigits(after_sep, &count);
        if (count != 3) break;
        end = group_end;
      }
      emit(start, end, TokenKind::kNumber);
      pos = end;
      continue;
    }

    emit(pos, next, TokenKind::kPunct);
    pos = next;
  }
  return tokens;
}

}  // namespace detgram
