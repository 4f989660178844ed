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

#include "detgram/matcher.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <tuple>

namespace detgram {

namespace {

// Texts shorter than this are enumerated on the calling thread only.
constexpr size_t kParallelThreshold = 2048;

constexpr std::array<std::string_view, 6> kTagStrings = {
    "<d>", "</d>", "<ad>", "</ad>", "<dd>", "</dd>"};

bool IsOpener(std::string_view s) {
  return s == "<d>" || s == "<ad>" || s == "<dd>";
}

bool IsCloser(std::string_view s) {
  return s == "</d>" || s == "</ad>" || s == "</dd>";
}

auto OrderKey(const Annotation &a) {
  return std::make_tuple(a.start, -static_cast<long long>(a.end - a.start),
                         -TagPriority(a.tag), a.source_rank, a.end,
                         a.token_begin, a.token_end, std::string_view(a.source));
}

void CollectAt(const RtnInterpreter &rtn, const AnalyzedText &text,
               size_t start, MatchSet *out) {
  const auto &mains = rtn.grammar().mains();
  for (size_t rank = 0; rank < mains.size(); ++rank) {
    for (const PathResult &path : rtn.Run(mains[rank], text, start)) {
      auto annotation = PathToAnnotation(text, mains[rank],
                                         static_cast<int>(rank), start, path);
      if (annotation) out->push_back(std::move(*annotation));
    }
  }
}

}  // namespace

const char *TagName(Tag tag) {
  switch (tag) {
    case Tag::kD:
      return "d";
    case Tag::kAd:
      return "ad";
    case Tag::kDd:
      return "dd";
  }
  return "?";
}

std::optional<Tag> ParseTag(std::string_view name) {
  if (name == "d") return Tag::kD;
  if (name == "ad") return Tag::kAd;
  if (name == "dd") return Tag::kDd;
  return std::nullopt;
}

Tag TagForGraph(std::string_view main) {
  if (main == "aDet") return Tag::kAd;
  if (main == "deDet") return Tag::kDd;
  return Tag::kD;
}

int TagPriority(Tag tag) {
  switch (tag) {
    case Tag::kAd:
      return 2;
    case Tag::kDd:
      return 1;
    case Tag::kD:
      return 0;
  }
  return 0;
}

void Normalize(MatchSet *matches) {
  std::sort(matches->begin(), matches->end(),
            [](const Annotation &a, const Annotation &b) {
              return OrderKey(a) < OrderKey(b);
            });
  matches->erase(std::unique(matches->begin(), matches->end()),
                 matches->end());
}

std::optional<Annotation> PathToAnnotation(const AnalyzedText &text,
                                           std::string_view main,
                                           int source_rank, size_t start,
                                           const PathResult &path) {
  std::optional<size_t> open, close;
  for (const Emission &e : path.emissions) {
    if (IsOpener(e.text) && !open) open = e.position;
    if (IsCloser(e.text)) close = e.position;
  }
  size_t begin = open.value_or(start);
  size_t end = close.value_or(path.end);
  if (end <= begin || end > text.size()) return std::nullopt;
  Annotation a;
  a.tag = TagForGraph(main);
  a.token_begin = begin;
  a.token_end = end;
  a.start = text.tokens[begin].start;
  a.end = text.tokens[end - 1].end;
  a.source = std::string(main);
  a.source_rank = source_rank;
  return a;
}

MatchSet EnumerateMatchesSerial(const RtnInterpreter &rtn,
                                const AnalyzedText &text) {
  MatchSet matches;
  for (size_t start = 0; start < text.size(); ++start) {
    CollectAt(rtn, text, start, &matches);
  }
  Normalize(&matches);
  return matches;
}

MatchSet EnumerateMatches(const RtnInterpreter &rtn, const AnalyzedText &text) {
  const long long n = static_cast<long long>(text.size());
  MatchSet matches;
#pragma omp parallel if (text.size() >= kParallelThreshold)
  {
    MatchSet local;
#pragma omp for schedule(dynamic, 64) nowait
    for (long long start = 0; start < n; ++start) {
      CollectAt(rtn, text, static_cast<size_t>(start), &local);
    }
#pragma omp critical(detgram_enumerate_merge)
    matches.insert(matches.end(), std::make_move_iterator(local.begin()),
                   std::make_move_iterator(local.end()));
  }
  // Sorting makes the result independent of thread scheduling.
  Normalize(&matches);
  return matches;
}

MatchSet EnumerateMatchesFsa(const std::vector<Fsa> &fsas,
                             const AnalyzedText &text) {
  MatchSet matches;
  for (size_t rank = 0; rank < fsas.size(); ++rank) {
    for (size_t start = 0; start < text.size(); ++start) {
      for (const PathResult &path : RunFsa(fsas[rank], text, start)) {
        auto annotation = PathToAnnotation(
            text, fsas[rank].name, static_cast<int>(rank), start, path);
        if (annotation) matches.push_back(std::move(*annotation));
      }
    }
  }
  Normalize(&matches);
  return matches;
}

bool CoreNounPhraseFollows(const AnalyzedText &text, size_t index) {
  // Phases of the pattern ADV* A* N that are still alive.
  bool in_adverbs = true;
  bool in_adjectives = false;
  for (size_t i = index; i < text.size(); ++i) {
    bool noun = false, adjective = false, adverb = false;
    for (const LexicalEntry *entry : text.readings[i]) {
      noun |= entry->pos == Pos::kN;
      adjective |= entry->pos == Pos::kA;
      adverb |= entry->pos == Pos::kAdv;
    }
    if (noun) return true;
    bool next_adverbs = in_adverbs && adverb;
    bool next_adjectives = adjective;
    in_adverbs = next_adverbs;
    in_adjectives = next_adjectives;
    if (!in_adverbs && !in_adjectives) return false;
  }
  return false;
}

MatchSet ApplyNpGuard(const MatchSet &matches, const AnalyzedText &text) {
  MatchSet kept;
  for (const Annotation &a : matches) {
    if (CoreNounPhraseFollows(text, a.token_end)) kept.push_back(a);
  }
  return kept;
}

std::vector<Annotation> Linearize(const MatchSet &matches) {
  MatchSet sorted = matches;
  Normalize(&sorted);
  std::vector<Annotation> chosen;
  for (const Annotation &a : sorted) {
    // Candidates come in start order, so only the last choice can overlap.
    if (!chosen.empty() && a.start < chosen.back().end) continue;
    chosen.push_back(a);
  }
  return chosen;
}

std::string InsertTags(std::string_view raw,
                       const std::vector<Annotation> &annotations) {
  std::vector<Annotation> sorted = annotations;
  std::sort(sorted.begin(), sorted.end(),
            [](const Annotation &a, const Annotation &b) {
              return a.start < b.start;
            });
  std::string out;
  out.reserve(raw.size() + 10 * sorted.size());
  size_t pos = 0;
  for (const Annotation &a : sorted) {
    if (a.start < pos || a.end <= a.start || a.end > raw.size()) {
      throw std::invalid_argument("annotations overlap or exceed the text");
    }
    out.append(raw.substr(pos, a.start - pos));
    out += "<";
    out += TagName(a.tag);
    out += ">";
    out.append(raw.substr(a.start, a.end - a.start));
    out += "</";
    out += TagName(a.tag);
    out += ">";
    pos = a.end;
  }
  out.append(raw.substr(pos));
  return out;
}

std::string StripTags(std::string_view annotated) {
  std::string out;
  out.reserve(annotated.size());
  size_t i = 0;
  while (i < annotated.size()) {
    bool skipped = false;
    if (annotated[i] == '<') {
      for (std::string_view tag : kTagStrings) {
        if (annotated.substr(i, tag.size()) == tag) {
          i += tag.size();
          skipped = true;
          break;
        }
      }
    }
    if (!skipped) out.push_back(annotated[i++]);
  }
  return out;
}

Annotator::Annotator(const GrammarSet &grammar, const Lexicon &lexicon,
                     AnnotatorOptions options)
    : lexicon_(lexicon),
      options_(options),
      rtn_(grammar, options.depth_bound) {
  if (HasErrors(Validate(grammar))) {
    throw std::invalid_argument("grammar has validation errors");
  }
}

AnnotationResult Annotator::Annotate(std::string_view raw) const {
  AnalyzedText text = Analyze(raw, lexicon_);
  MatchSet matches = options_.parallel ? EnumerateMatches(rtn_, text)
                                       : EnumerateMatchesSerial(rtn_, text);
  if (options_.np_guard) matches = ApplyNpGuard(matches, text);
  AnnotationResult result;
  result.annotations = Linearize(matches);
  result.text = InsertTags(raw, result.annotations);
  result.tokens = text.size();
  for (const Token &t : text.tokens) {
    if (t.kind != TokenKind::kPunct) ++result.words;
  }
  return result;
}

}  // namespace detgram
