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

#include <algorithm>

#include "detgram/errors.h"
#include "detgram/text.h"

namespace detgram {

namespace {

struct PosCode {
  std::string_view code;
  Pos pos;
};

constexpr PosCode kPosCodes[] = {
    {"N", Pos::kN},       {"A", Pos::kA},       {"V", Pos::kV},
    {"ADV", Pos::kAdv},   {"DET", Pos::kDet},   {"PREP", Pos::kPrep},
    {"PRO", Pos::kPro},   {"CONJ", Pos::kConj}, {"INTJ", Pos::kIntj},
    {"X", Pos::kX},
};

std::string_view TrimRight(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::optional<Pos> ParsePos(std::string_view code) {
  for (const PosCode &pc : kPosCodes) {
    if (pc.code == code) return pc.pos;
  }
  return std::nullopt;
}

const char *PosName(Pos pos) {
  for (const PosCode &pc : kPosCodes) {
    if (pc.pos == pos) return pc.code.data();
  }
  return "?";
}

bool LexicalEntry::HasFeature(std::string_view feature) const {
  return std::binary_search(features.begin(), features.end(), feature);
}

std::vector<LexicalEntry> ParseLexicon(std::string_view text) {
  std::vector<LexicalEntry> entries;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = TrimRight(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;

    if (line.empty() || line.front() == '#') continue;

    size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("missing ',' between surface and lemma", line_no);
    }
    size_t dot = line.find('.', comma + 1);
    if (dot == std::string_view::npos) {
      throw ParseError("missing '.' before part of speech", line_no);
    }
    LexicalEntry entry;
    entry.surface = std::string(line.substr(0, comma));
    entry.lemma = std::string(line.substr(comma + 1, dot - comma - 1));
    if (entry.surface.empty()) throw ParseError("empty surface", line_no);
    if (entry.surface.find('.') != std::string::npos) {
      throw ParseError("'.' in surface form", line_no);
    }
    if (entry.lemma.empty()) throw ParseError("empty lemma", line_no);
    if (entry.lemma.find(',') != std::string::npos) {
      throw ParseError("',' in lemma", line_no);
    }

    std::string_view rest = line.substr(dot + 1);
    size_t plus = rest.find('+');
    std::string_view code = rest.substr(0, plus);
    std::optional<Pos> parsed = ParsePos(code);
    if (!parsed) {
      throw ParseError("unknown part of speech '" + std::string(code) + "'",
                       line_no);
    }
    entry.pos = *parsed;

    while (plus != std::string_view::npos) {
      size_t next = rest.find('+', plus + 1);
      std::string_view feature = rest.substr(
          plus + 1, next == std::string_view::npos ? next : next - plus - 1);
      if (feature.empty()) throw ParseError("empty feature", line_no);
      if (feature.find_first_of(",.") != std::string_view::npos) {
        throw ParseError("invalid feature '" + std::string(feature) + "'",
                         line_no);
      }
      entry.features.emplace_back(feature);
      plus = next;
    }
    std::sort(entry.features.begin(), entry.features.end());
    if (std::adjacent_find(entry.features.begin(), entry.features.end()) !=
        entry.features.end()) {
      throw ParseError("duplicate feature", line_no);
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string FormatEntry(const LexicalEntry &entry) {
  std::string out = entry.surface + "," + entry.lemma + "." + PosName(entry.pos);
  for (const std::string &f : entry.features) out += "+" + f;
  return out;
}

Lexicon::Lexicon(std::vector<LexicalEntry> entries)
    : entries_(std::move(entries)) {
  for (const LexicalEntry &entry : entries_) {
    index_[entry.surface].push_back(&entry);
  }
}

const std::vector<const LexicalEntry *> &Lexicon::Lookup(
    std::string_view surface) const {
  static const std::vector<const LexicalEntry *> kEmpty;
  auto it = index_.find(std::string(surface));
  return it == index_.end() ? kEmpty : it->second;
}

std::vector<const LexicalEntry *> Lexicon::Readings(std::string_view token) const {
  std::vector<const LexicalEntry *> readings = Lookup(token);
  auto add = [&](const std::string &form) {
    if (form == token) return;
    for (const LexicalEntry *e : Lookup(form)) {
      if (std::find(readings.begin(), readings.end(), e) == readings.end()) {
        readings.push_back(e);
      }
    }
  };
  add(FoldInitial(token));
  if (IsAllUpper(token)) add(ToLower(token));
  return readings;
}

}  // namespace detgram
