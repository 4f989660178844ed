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

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "detgram/matcher.h"
#include "detgram/text.h"

namespace detgram {

namespace {

struct Frame {
  int graph;
  int return_node;

  auto operator<=>(const Frame &) const = default;
};

struct Config {
  int graph;
  int node;
  size_t pos;
  std::vector<Frame> stack;
  std::vector<Emission> emissions;

  auto operator<=>(const Config &) const = default;
};

template <typename FirstSet>
bool AddMask(FirstSet *set, const LexicalMask &mask) {
  if (std::find(set->masks.begin(), set->masks.end(), mask) != set->masks.end()) {
    return false;
  }
  set->masks.push_back(mask);
  return true;
}

}  // namespace

RtnInterpreter::RtnInterpreter(const GrammarSet &grammar, int depth_bound)
    : grammar_(grammar), depth_bound_(depth_bound) {
  if (depth_bound < 1) throw std::invalid_argument("depth bound must be >= 1");
  const auto &graphs = grammar_.graphs();
  callee_.resize(graphs.size());
  for (size_t g = 0; g < graphs.size(); ++g) {
    callee_[g].resize(graphs[g].nodes.size());
    for (size_t n = 0; n < graphs[g].nodes.size(); ++n) {
      for (const Transition &t : graphs[g].nodes[n]) {
        callee_[g][n].push_back(
            t.kind == Transition::Kind::kCall ? grammar_.IndexOf(t.text) : -1);
      }
    }
  }
  ComputeFirstSets();
}

void RtnInterpreter::ComputeFirstSets() {
  const auto &graphs = grammar_.graphs();
  // Per-node sets, grown to a fixpoint across all graphs.
  std::vector<std::vector<FirstSet>> nodes(graphs.size());
  for (size_t g = 0; g < graphs.size(); ++g) {
    nodes[g].resize(graphs[g].nodes.size());
    if (graphs[g].final >= 0 &&
        graphs[g].final < static_cast<int>(graphs[g].nodes.size())) {
      nodes[g][graphs[g].final].nullable = true;
    }
  }
  auto merge = [](FirstSet *into, const FirstSet &from, bool with_null) {
    bool changed = false;
    for (const std::string &lit : from.literals) {
      changed |= into->literals.insert(lit).second;
    }
    for (const LexicalMask &mask : from.masks) changed |= AddMask(into, mask);
    if (with_null && from.nullable && !into->nullable) {
      into->nullable = changed = true;
    }
    return changed;
  };
  auto entry = [&](int g) -> const FirstSet & {
    return nodes[g][graphs[g].initial];
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t g = 0; g < graphs.size(); ++g) {
      for (size_t n = 0; n < graphs[g].nodes.size(); ++n) {
        FirstSet &here = nodes[g][n];
        const auto &transitions = graphs[g].nodes[n];
        for (size_t i = 0; i < transitions.size(); ++i) {
          const Transition &t = transitions[i];
          const FirstSet &next = nodes[g][t.target];
          switch (t.kind) {
            case Transition::Kind::kMask:
              if (!t.mask.consuming()) {
                changed |= merge(&here, next, true);
              } else if (t.mask.kind == LexicalMask::Kind::kLiteral) {
                changed |= here.literals.insert(t.mask.literal).second;
              } else {
                changed |= AddMask(&here, t.mask);
              }
              break;
            case Transition::Kind::kOutput:
              changed |= merge(&here, next, true);
              break;
            case Transition::Kind::kCall: {
              int c = callee_[g][n][i];
              if (c < 0) break;
              // Copy: `here` may alias the callee's entry node.
              FirstSet callee = entry(c);
              changed |= merge(&here, callee, false);
              if (callee.nullable) changed |= merge(&here, next, true);
              break;
            }
          }
        }
      }
    }
  }
  first_.clear();
  for (size_t g = 0; g < graphs.size(); ++g) {
    first_.push_back(entry(static_cast<int>(g)));
  }
}

bool RtnInterpreter::CanEnter(int graph, const AnalyzedText &text,
                              size_t pos) const {
  const FirstSet &first = first_[graph];
  if (first.nullable) return true;
  if (pos >= text.size()) return false;
  for (const LexicalMask &mask : first.masks) {
    if (text.Matches(mask, pos)) return true;
  }
  const Token &token = text.tokens[pos];
  if (first.literals.count(token.surface)) return true;
  if (text.folded.size() == text.size()) {
    return first.literals.count(text.folded[pos]) > 0;
  }
  return first.literals.count(FoldInitial(token.surface)) > 0;
}

std::vector<PathResult> RtnInterpreter::Run(std::string_view main,
                                            const AnalyzedText &text,
                                            size_t start) const {
  int main_index = grammar_.IndexOf(main);
  if (main_index < 0) {
    throw std::out_of_range("no graph '" + std::string(main) + "'");
  }
  std::set<PathResult> results;
  if (start >= text.size() || !CanEnter(main_index, text, start)) return {};

  const auto &graphs = grammar_.graphs();
  std::set<Config> visited;
  std::vector<Config> agenda;
  auto push = [&](Config config) {
    if (visited.insert(config).second) agenda.push_back(std::move(config));
  };
  push({main_index, graphs[main_index].initial, start, {}, {}});

  while (!agenda.empty()) {
    Config config = std::move(agenda.back());
    agenda.pop_back();
    const Graph &graph = graphs[config.graph];

    if (config.node == graph.final) {
      if (config.stack.empty()) {
        if (config.pos > start) {
          results.insert({config.pos, config.emissions});
        }
      } else {
        Config next = config;
        next.graph = next.stack.back().graph;
        next.node = next.stack.back().return_node;
        next.stack.pop_back();
        push(std::move(next));
      }
    }

    const auto &transitions = graph.nodes[config.node];
    for (size_t i = 0; i < transitions.size(); ++i) {
      const Transition &t = transitions[i];
      switch (t.kind) {
        case Transition::Kind::kMask:
          if (!t.mask.consuming()) {
            Config next = config;
            next.node = t.target;
            push(std::move(next));
          } else if (config.pos < text.size() &&
                     text.Matches(t.mask, config.pos)) {
            Config next = config;
            next.node = t.target;
            ++next.pos;
            push(std::move(next));
          }
          break;
        case Transition::Kind::kOutput: {
          Config next = config;
          next.node = t.target;
          if (!t.text.empty()) next.emissions.push_back({config.pos, t.text});
          push(std::move(next));
          break;
        }
        case Transition::Kind::kCall: {
          if (static_cast<int>(config.stack.size()) + 1 > depth_bound_) break;
          int callee = callee_[config.graph][config.node][i];
          if (callee < 0) {
            throw std::invalid_argument("call to undefined graph '" + t.text +
                                        "'");
          }
          if (!CanEnter(callee, text, config.pos)) break;
          Config next = config;
          next.stack.push_back({config.graph, t.target});
          next.graph = callee;
          next.node = graphs[callee].initial;
          push(std::move(next));
          break;
        }
      }
    }
  }
  return {results.begin(), results.end()};
}

}  // namespace detgram
