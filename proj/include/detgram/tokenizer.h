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

#ifndef DETGRAM_TOKENIZER_H_
#define DETGRAM_TOKENIZER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace detgram {

enum class TokenKind { kWord, kNumber, kPunct };

// A surface unit of the raw text. [start, end) are byte offsets into the
// source string and surface is always the exact slice at that span.
struct Token {
  std::string surface;
  size_t start = 0;
  size_t end = 0;
  TokenKind kind = TokenKind::kWord;

  bool operator==(const Token &other) const = default;
};

// Splits raw French text into words, numbers and punctuation marks.
//
//  - an elided clitic (l' d' j' qu' n' s' c' m' t') becomes its own word
//    token that ends at the apostrophe (ASCII ' or U+2019)
//  - hyphenated words stay whole ("vis-à-vis")
//  - digit groups joined by a single space, no-break space, thin space or
//    narrow no-break space form one number token when every group after the
//    first has three digits ("100 000")
//  - every other non-space code point is a one-character punctuation token
//
// Total: never fails, and malformed UTF-8 bytes become punctuation tokens.
std::vector<Token> Tokenize(std::string_view raw);

bool IsElidedClitic(std::string_view word);

const char *TokenKindName(TokenKind kind);

}  // namespace detgram

#endif  // DETGRAM_TOKENIZER_H_
