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

// Recursive transition networks: graphs whose transitions consume a token
// (a lexical mask), call another graph by name, or emit an output string.

#ifndef DETGRAM_GRAMMAR_H_
#define DETGRAM_GRAMMAR_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "detgram/mask.h"

namespace detgram {

struct Transition {
  enum class Kind { kMask, kCall, kOutput };

  Kind kind = Kind::kMask;
  LexicalMask mask;  // kMask only
  std::string text;  // callee name (kCall) or output string (kOutput)
  int target = 0;

  static Transition Mask(LexicalMask mask, int target);
  static Transition Call(std::string graph, int target);
  static Transition Output(std::string text, int target);

  // Non-consuming: epsilon masks, outputs and calls.
  bool consuming() const { return kind == Kind::kMask && mask.consuming(); }

  // The label as written in grammar files.
  std::string Label() const;

  bool operator==(const Transition &other) const = default;
};

struct Graph {
  std::string name;
  std::vector<std::vector<Transition>> nodes;
  int initial = 0;
  int final = 0;

  int AddNode() {
    nodes.emplace_back();
    return static_cast<int>(nodes.size()) - 1;
  }
  void Add(int from, Transition t) { nodes[from].push_back(std::move(t)); }
  size_t TransitionCount() const;

  bool operator==(const Graph &other) const = default;
};

// Output strings a transition may carry besides the empty string.
bool IsTagOutput(std::string_view text);

class GrammarSet {
 public:
  // Throws std::invalid_argument on a duplicate name.
  void AddGraph(Graph graph);
  void AddMain(std::string name) { mains_.push_back(std::move(name)); }

  const Graph *Find(std::string_view name) const;
  int IndexOf(std::string_view name) const;  // -1 when absent

  const std::vector<Graph> &graphs() const { return graphs_; }
  const std::vector<std::string> &mains() const { return mains_; }
  bool IsMain(std::string_view name) const;
  bool empty() const { return graphs_.empty(); }

  bool operator==(const GrammarSet &other) const {
    return graphs_ == other.graphs_ && mains_ == other.mains_;
  }

 private:
  std::vector<Graph> graphs_;
  std::vector<std::string> mains_;
  std::unordered_map<std::string, int> index_;
};

// Grammar file format (UTF-8, '#' starts a comment line):
//
//   graph Det @main
//     nodes 4
//     initial 0
//     final 3
//     0 {<d>} 1
//     1 :DetSeq 2
//     2 {</d>} 3
//
// A transition line is "source label target". Labels use the mask syntax,
// ":Name" for a call, "{text}" for an output and "\"...\"" for a literal
// holding spaces or starting with a reserved character. initial defaults to
// 0; nodes and final are required. Throws ParseError on syntax errors,
// duplicate graphs, undeclared nodes and calls to undefined graphs.
GrammarSet ParseGrammar(std::string_view text);

// Inverse of ParseGrammar up to whitespace and comments.
std::string SerializeGrammar(const GrammarSet &grammar);

struct Diagnostic {
  enum class Severity { kError, kWarning };

  Severity severity = Severity::kError;
  std::string code;  // e.g. "unresolved-call", "left-recursion"
  std::string graph;
  std::string message;

  std::string ToString() const;
};

bool HasErrors(const std::vector<Diagnostic> &diagnostics);

// Reports unresolved calls, bad node ids or outputs, transitions leaving a
// final node, unreachable and dead nodes, non-consuming cycles inside a graph
// and, as warnings, sets of graphs that can reach themselves through calls
// without consuming a token (the matcher's depth bound cuts those off).
std::vector<Diagnostic> Validate(const GrammarSet &grammar);

struct GrammarStats {
  size_t graphs = 0;
  size_t transitions = 0;
  size_t distinct_literals = 0;
  std::vector<std::string> mains;
};

GrammarStats Stats(const GrammarSet &grammar);

}  // namespace detgram

#endif  // DETGRAM_GRAMMAR_H_
