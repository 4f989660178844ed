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

#ifndef DETGRAM_LEXICON_H_
#define DETGRAM_LEXICON_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace detgram {

enum class Pos { kN, kA, kV, kAdv, kDet, kPrep, kPro, kConj, kIntj, kX };

std::optional<Pos> ParsePos(std::string_view code);
const char *PosName(Pos pos);

// One reading of a simple word. features is sorted and duplicate-free.
struct LexicalEntry {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::kX;
  std::vector<std::string> features;

  bool HasFeature(std::string_view feature) const;
  bool operator==(const LexicalEntry &other) const = default;
};

// Parses a dictionary in the line format
//
//   surface,lemma.POS+feat1+feat2
//
// Blank lines and lines starting with '#' are skipped. Entries keep file
// order and duplicates are kept. Throws ParseError on a malformed line.
std::vector<LexicalEntry> ParseLexicon(std::string_view text);

std::string FormatEntry(const LexicalEntry &entry);

// Immutable surface-indexed dictionary. Safe to share between threads.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(std::vector<LexicalEntry> entries);

  // The index points into entries_, so copies are not allowed.
  Lexicon(const Lexicon &) = delete;
  Lexicon &operator=(const Lexicon &) = delete;
  Lexicon(Lexicon &&) = default;
  Lexicon &operator=(Lexicon &&) = default;

  // Entries whose surface is exactly `surface`.
  const std::vector<const LexicalEntry *> &Lookup(std::string_view surface) const;

  // All readings of a text token: the surface as written, with an initial
  // capital folded, and fully lowercased when the token is all capitals.
  std::vector<const LexicalEntry *> Readings(std::string_view token) const;

  const std::vector<LexicalEntry> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

 private:
  std::vector<LexicalEntry> entries_;
  std::unordered_map<std::string, std::vector<const LexicalEntry *>> index_;
};

}  // namespace detgram

#endif  // DETGRAM_LEXICON_H_
