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

// UTF-8 helpers shared by the tokenizer, lexicon lookup and grammar rewriting.
// Case mapping covers ASCII, Latin-1 and Latin Extended-A, which is all that
// French text needs.

#ifndef DETGRAM_TEXT_H_
#define DETGRAM_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace detgram {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the code point starting at byte offset *pos and advances *pos past
// it. Malformed sequences decode as U+FFFD and consume exactly one byte.
char32_t DecodeUtf8(std::string_view text, size_t *pos);

void AppendUtf8(char32_t cp, std::string *out);

char32_t ToLowerChar(char32_t cp);
bool IsUpperChar(char32_t cp);
bool IsLowerChar(char32_t cp);

// Lowercases the first code point only.
std::string FoldInitial(std::string_view word);

std::string ToLower(std::string_view word);

// True when the word has at least two cased letters and none is lowercase.
bool IsAllUpper(std::string_view word);

// Vowel-initial in the sense of French elision: a e i o u é è ê à h, after
// folding an initial capital.
bool StartsWithVowel(std::string_view word);

}  // namespace detgram

#endif  // DETGRAM_TEXT_H_
