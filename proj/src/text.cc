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

#include "detgram/text.h"

namespace detgram {

char32_t DecodeUtf8(std::string_view text, size_t *pos) {
  size_t i = *pos;
  unsigned char lead = static_cast<unsigned char>(text[i]);
  if (lead < 0x80) {
    *pos = i + 1;
    return lead;
  }
  int extra;
  char32_t cp;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    *pos = i + 1;
    return kReplacementChar;
  }
  if (i + extra >= text.size()) {
    *pos = i + 1;
    return kReplacementChar;
  }
  for (int k = 1; k <= extra; ++k) {
    unsigned char c = static_cast<unsigned char>(text[i + k]);
    if ((c & 0xC0) != 0x80) {
      *pos = i + 1;
      return kReplacementChar;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  // Reject overlong forms and surrogates so that decoding stays canonical.
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    *pos = i + 1;
    return kReplacementChar;
  }
  *pos = i + 1 + extra;
  return cp;
}

void AppendUtf8(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool IsUpperChar(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
  if (cp >= 0x100 && cp <= 0x137) return cp % 2 == 0;
  if (cp >= 0x139 && cp <= 0x148) return cp % 2 == 1;
  if (cp >= 0x14A && cp <= 0x177) return cp % 2 == 0;
  if (cp == 0x178) return true;
  if (cp >= 0x179 && cp <= 0x17E) return cp % 2 == 1;
  return false;
}

bool IsLowerChar(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return true;
  if (cp >= 0xDF && cp <= 0xFF && cp != 0xF7) return true;
  if (cp >= 0x100 && cp <= 0x17F) return !IsUpperChar(cp) && cp != 0x138;
  return false;
}

char32_t ToLowerChar(char32_t cp) {
  if (!IsUpperChar(cp)) return cp;
  if (cp == 0x178) return 0xFF;
  if (cp < 0x100) return cp + 0x20;
  return cp + 1;
}

std::string FoldInitial(std::string_view word) {
  if (word.empty()) return std::string();
  size_t pos = 0;
  char32_t first = DecodeUtf8(word, &pos);
  if (!IsUpperChar(first)) return std::string(word);
  std::string out;
  out.reserve(word.size());
  AppendUtf8(ToLowerChar(first), &out);
  out.append(word.substr(pos));
  return out;
}

std::string ToLower(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  size_t pos = 0;
  while (pos < word.size()) {
    size_t start = pos;
    char32_t cp = DecodeUtf8(word, &pos);
    if (IsUpperChar(cp)) {
      AppendUtf8(ToLowerChar(cp), &out);
    } else {
      out.append(word.substr(start, pos - start));
    }
  }
  return out;
}

bool IsAllUpper(std::string_view word) {
  int upper = 0;
  size_t pos = 0;
  while (pos < word.size()) {
    char32_t cp = DecodeUtf8(word, &pos);
    if (IsLowerChar(cp)) return false;
    if (IsUpperChar(cp)) ++upper;
  }
  return upper >= 2;
}

bool StartsWithVowel(std::string_view word) {
  if (word.empty()) return false;
  size_t pos = 0;
  switch (ToLowerChar(DecodeUtf8(word, &pos))) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
    case 'h':
    case 0xE9:  // é
    case 0xE8:  // è
    case 0xEA:  // ê
    case 0xE0:  // à
      return true;
    default:
      return false;
  }
}

}  // namespace detgram
