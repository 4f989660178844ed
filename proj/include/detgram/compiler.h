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

// Flattening of a recursive transition network into a finite-state automaton
// by inlining calls up to a depth bound.

#ifndef DETGRAM_COMPILER_H_
#define DETGRAM_COMPILER_H_

#include <string>
#include <string_view>
#include <vector>

#include "detgram/grammar.h"
#include "detgram/mask.h"
#include "detgram/path.h"

namespace detgram {

// Every transition consumes one token. `pre` outputs are emitted before that
// token, `post` outputs after it; post is only used on transitions into a
// final state, where outputs at the end of a path are fused.
struct FsaTransition {
  int src = 0;
  LexicalMask label;
  std::vector<std::string> pre;
  std::vector<std::string> post;
  int dst = 0;

  bool operator==(const FsaTransition &other) const = default;
};

struct Fsa {
  std::string name;
  int num_states = 0;
  int initial = -1;  // -1 for the empty automaton
  std::vector<int> finals;
  // Sorted by source state, then label text.
  std::vector<FsaTransition> transitions;
  // transitions of state s are [offsets[s], offsets[s + 1]).
  std::vector<size_t> offsets;

  bool IsFinal(int state) const;
  bool operator==(const Fsa &other) const = default;
};

// Inlines calls of `main` up to `depth_bound` nested calls (a call from the
// main graph has depth 1; deeper calls are dropped with their paths), removes
// non-consuming transitions by fusing outputs onto the next consuming
// transition, and trims. Paths that consume nothing are dropped. Throws
// std::invalid_argument when depth_bound < 1, std::out_of_range when main is
// not a main graph, and std::length_error when inlining grows too large.
Fsa Flatten(const GrammarSet &grammar, std::string_view main,
            int depth_bound = kDefaultDepthBound);

struct FsaCounts {
  size_t states = 0;
  size_t transitions = 0;

  bool operator==(const FsaCounts &) const = default;
};

FsaCounts CountStates(const Fsa &fsa);

// Text form, one transition per line in the stored order:
//
//   fsa Det
//   states 5
//   initial 0
//   finals 4
//   0<TAB>le<TAB>1<TAB><d><TAB>-
//
// The last two fields are the pre and post outputs joined by spaces, '-' when
// empty.
std::string SerializeFsa(const Fsa &fsa);
Fsa ParseFsa(std::string_view text);

// All accepting paths starting at token `start`, sorted and de-duplicated.
std::vector<PathResult> RunFsa(const Fsa &fsa, const AnalyzedText &text,
                               size_t start);

}  // namespace detgram

#endif  // DETGRAM_COMPILER_H_
