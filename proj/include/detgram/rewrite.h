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

// Rewriting a grammar kept in normalized form ("à le", "de un") into the
// surface forms found in text ("au", "d'un").

#ifndef DETGRAM_REWRITE_H_
#define DETGRAM_REWRITE_H_

#include <string>
#include <string_view>
#include <vector>

#include "detgram/grammar.h"

namespace detgram {

// Replaces the literal sequence `from` by `to`. With if_vowel set, the rule
// applies only when the literal right after `from` starts with a vowel; when
// what follows is not a literal (a mask, or the end of a main graph) both the
// rewritten and the original forms are kept.
struct RewriteRule {
  std::vector<std::string> from;
  std::vector<std::string> to;
  bool if_vowel = false;

  std::string ToString() const;
  bool operator==(const RewriteRule &other) const = default;
};

// One rule per line: "de+le -> du", "de -> d' if-vowel". '#' comments.
// Throws ParseError.
std::vector<RewriteRule> ParseRewriteTable(std::string_view text);

struct SurfaceResult {
  GrammarSet grammar;
  // Warnings about rules competing for the same literals; the earlier rule
  // in the table always wins.
  std::vector<Diagnostic> diagnostics;
};

// Rewrites every path of literal transitions by scanning it left to right
// and applying, at each position, the first rule in table order that
// matches. Rewrites reach across subgraph calls: a callee is specialized by
// the literals still pending when it is entered and left, and gets the name
// "Graph/pending-in/pending-out" unless both are empty. Main graph names are
// kept. Throws std::invalid_argument when the grammar has validation errors.
SurfaceResult Surfaceize(const GrammarSet &grammar,
                         const std::vector<RewriteRule> &rules);

}  // namespace detgram

#endif  // DETGRAM_REWRITE_H_
