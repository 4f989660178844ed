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

#ifndef DETGRAM_MATCHER_H_
#define DETGRAM_MATCHER_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "detgram/compiler.h"
#include "detgram/grammar.h"
#include "detgram/lexicon.h"
#include "detgram/mask.h"
#include "detgram/path.h"

namespace detgram {

// Determiner kinds: plain (d), introduced by "à" (ad) or by "de" (dd).
enum class Tag { kD, kAd, kDd };

const char *TagName(Tag tag);  // "d", "ad", "dd"
std::optional<Tag> ParseTag(std::string_view name);

// aDet -> ad, deDet -> dd, any other main graph -> d.
Tag TagForGraph(std::string_view main);

// Higher wins when two matches have the same span: ad > dd > d.
int TagPriority(Tag tag);

// One recognized determiner. start/end are byte offsets into the raw text;
// token_begin/token_end index the token list.
struct Annotation {
  Tag tag = Tag::kD;
  size_t start = 0;
  size_t end = 0;
  size_t token_begin = 0;
  size_t token_end = 0;
  std::string source;   // main graph name
  int source_rank = 0;  // declaration order of the main graph

  bool Overlaps(const Annotation &other) const {
    return start < other.end && other.start < end;
  }
  bool operator==(const Annotation &other) const = default;
};

// Matches ordered by (start, longest first, tag priority, main graph order,
// end), duplicates removed.
using MatchSet = std::vector<Annotation>;

// Sorts a match list into MatchSet order and removes duplicates.
void Normalize(MatchSet *matches);

// Direct interpretation of the network with an explicit call stack. A call
// is followed only while the stack holds at most depth_bound frames, the
// main graph counting as depth 0.
class RtnInterpreter {
 public:
  RtnInterpreter(const GrammarSet &grammar, int depth_bound = kDefaultDepthBound);

  // All accepting paths of `main` starting at token `start` that consume at
  // least one token, as distinct (end, outputs) pairs in sorted order.
  std::vector<PathResult> Run(std::string_view main, const AnalyzedText &text,
                              size_t start) const;

  const GrammarSet &grammar() const { return grammar_; }
  int depth_bound() const { return depth_bound_; }

 private:
  // What the paths through a graph can consume first; used to skip calls
  // that cannot succeed at the current token.
  struct FirstSet {
    std::unordered_set<std::string> literals;
    std::vector<LexicalMask> masks;  // non-literal masks that may come first
    bool nullable = false;  // the final node is reachable without input
  };

  void ComputeFirstSets();
  bool CanEnter(int graph, const AnalyzedText &text, size_t pos) const;

  const GrammarSet &grammar_;
  int depth_bound_;
  std::vector<FirstSet> first_;
  // callee_[graph][node][i]: graph index called by transition i, or -1.
  std::vector<std::vector<std::vector<int>>> callee_;
};

// Converts an accepting path of `main` starting at `start` into a span. The
// span runs from the first opening tag output to the last closing tag
// output, so a graph may consume right context it does not annotate; a path
// without tag outputs spans everything it consumed. Returns nullopt for an
// empty span.
std::optional<Annotation> PathToAnnotation(const AnalyzedText &text,
                                           std::string_view main,
                                           int source_rank, size_t start,
                                           const PathResult &path);

// Every (span, tag) reachable from every start position for every main
// graph. The serial version is the reference for the parallel one.
MatchSet EnumerateMatchesSerial(const RtnInterpreter &rtn,
                                const AnalyzedText &text);
MatchSet EnumerateMatches(const RtnInterpreter &rtn, const AnalyzedText &text);

// Same enumeration driven by flattened automata, one per main graph in
// declaration order.
MatchSet EnumerateMatchesFsa(const std::vector<Fsa> &fsas,
                             const AnalyzedText &text);

// True when tokens from `index` on start with ADV* A* N according to the
// dictionary readings.
bool CoreNounPhraseFollows(const AnalyzedText &text, size_t index);

// Keeps the matches followed by a core noun phrase.
MatchSet ApplyNpGuard(const MatchSet &matches, const AnalyzedText &text);

// Greedy leftmost selection: takes the first match in MatchSet order and
// drops everything overlapping it, repeatedly. The input order is
// irrelevant.
std::vector<Annotation> Linearize(const MatchSet &matches);

// Inserts opening and closing tags at the annotation offsets. Annotations
// must not overlap.
std::string InsertTags(std::string_view raw,
                       const std::vector<Annotation> &annotations);

// Removes the six tag strings.
std::string StripTags(std::string_view annotated);

struct AnnotatorOptions {
  int depth_bound = kDefaultDepthBound;
  bool np_guard = true;
  bool parallel = true;
};

struct AnnotationResult {
  std::string text;
  std::vector<Annotation> annotations;
  size_t tokens = 0;
  size_t words = 0;  // word and number tokens
};

// The full pipeline: tokenize, enumerate, guard, linearize, insert tags.
// The grammar and lexicon are borrowed and must outlive the annotator.
class Annotator {
 public:
  // Throws std::invalid_argument when the grammar has validation errors.
  Annotator(const GrammarSet &grammar, const Lexicon &lexicon,
            AnnotatorOptions options = {});

  AnnotationResult Annotate(std::string_view raw) const;

 private:
  const Lexicon &lexicon_;
  AnnotatorOptions options_;
  RtnInterpreter rtn_;
};

}  // namespace detgram

#endif  // DETGRAM_MATCHER_H_
