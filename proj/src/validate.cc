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
#include <functional>

#include "detgram/grammar.h"

namespace detgram {

namespace {

bool IsNonConsuming(const Transition &t, const std::vector<char> &nullable,
                    const GrammarSet &grammar) {
  switch (t.kind) {
    case Transition::Kind::kOutput:
      return true;
    case Transition::Kind::kMask:
      return !t.mask.consuming();
    case Transition::Kind::kCall: {
      int callee = grammar.IndexOf(t.text);
      return callee >= 0 && nullable[callee];
    }
  }
  return false;
}

bool ValidNode(const Graph &g, int id) {
  return id >= 0 && id < static_cast<int>(g.nodes.size());
}

// Nodes reachable from `from` through non-consuming transitions.
std::vector<char> EmptyReach(const Graph &g, int from,
                             const std::vector<char> &nullable,
                             const GrammarSet &grammar) {
  std::vector<char> seen(g.nodes.size(), 0);
  std::vector<int> stack = {from};
  seen[from] = 1;
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    for (const Transition &t : g.nodes[n]) {
      if (!ValidNode(g, t.target) || seen[t.target]) continue;
      if (!IsNonConsuming(t, nullable, grammar)) continue;
      seen[t.target] = 1;
      stack.push_back(t.target);
    }
  }
  return seen;
}

// Tarjan's strongly connected components over graph indices.
std::vector<std::vector<int>> StronglyConnected(
    const std::vector<std::vector<int>> &edges) {
  int n = static_cast<int>(edges.size());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : edges[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> component;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        component.push_back(w);
      } while (w != v);
      components.push_back(std::move(component));
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return components;
}

}  // namespace

std::vector<Diagnostic> Validate(const GrammarSet &grammar) {
  std::vector<Diagnostic> out;
  auto report = [&](Diagnostic::Severity severity, std::string code,
                    const std::string &graph, std::string message) {
    out.push_back(Diagnostic{severity, std::move(code), graph,
                             std::move(message)});
  };
  const auto kError = Diagnostic::Severity::kError;
  const auto &graphs = grammar.graphs();
  const size_t count = graphs.size();

  for (const std::string &main : grammar.mains()) {
    if (!grammar.Find(main)) {
      report(kError, "unknown-main", main, "main graph is not defined");
    }
  }

  // Structural checks; graphs failing them are skipped below.
  std::vector<char> sound(count, 1);
  for (size_t gi = 0; gi < count; ++gi) {
    const Graph &g = graphs[gi];
    if (!ValidNode(g, g.initial) || !ValidNode(g, g.final)) {
      report(kError, "bad-node", g.name, "initial or final node out of range");
      sound[gi] = 0;
      continue;
    }
    if (!g.nodes[g.final].empty()) {
      report(kError, "final-has-transitions", g.name,
             "final node " + std::to_string(g.final) +
                 " has outgoing transitions");
    }
    for (size_t n = 0; n < g.nodes.size(); ++n) {
      for (const Transition &t : g.nodes[n]) {
        if (!ValidNode(g, t.target)) {
          report(kError, "bad-node", g.name,
                 "transition from node " + std::to_string(n) +
                     " to missing node " + std::to_string(t.target));
          sound[gi] = 0;
        }
        if (t.kind == Transition::Kind::kCall && !grammar.Find(t.text)) {
          report(kError, "unresolved-call", g.name,
                 "call to undefined graph '" + t.text + "'");
        }
        if (t.kind == Transition::Kind::kOutput && !t.text.empty() &&
            !IsTagOutput(t.text)) {
          report(kError, "bad-output", g.name,
                 "unknown output '" + t.text + "'");
        }
      }
    }
  }

  // Graphs that accept the empty sequence, by fixpoint.
  std::vector<char> nullable(count, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t gi = 0; gi < count; ++gi) {
      if (nullable[gi] || !sound[gi]) continue;
      const Graph &g = graphs[gi];
      if (EmptyReach(g, g.initial, nullable, grammar)[g.final]) {
        nullable[gi] = 1;
        changed = true;
      }
    }
  }

  for (size_t gi = 0; gi < count; ++gi) {
    if (!sound[gi]) continue;
    const Graph &g = graphs[gi];
    const size_t n = g.nodes.size();

    std::vector<char> reach(n, 0);
    std::vector<int> stack = {g.initial};
    reach[g.initial] = 1;
    std::vector<std::vector<int>> reverse(n);
    for (size_t from = 0; from < n; ++from) {
      for (const Transition &t : g.nodes[from]) {
        reverse[t.target].push_back(static_cast<int>(from));
      }
    }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Transition &t : g.nodes[v]) {
        if (!reach[t.target]) {
          reach[t.target] = 1;
          stack.push_back(t.target);
        }
      }
    }
    std::vector<char> coreach(n, 0);
    stack = {g.final};
    coreach[g.final] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int from : reverse[v]) {
        if (!coreach[from]) {
          coreach[from] = 1;
          stack.push_back(from);
        }
      }
    }
    for (size_t v = 0; v < n; ++v) {
      if (!reach[v]) {
        report(kError, "unreachable", g.name,
               "node " + std::to_string(v) + " is not reachable");
      } else if (!coreach[v]) {
        report(kError, "dead-node", g.name,
               "node " + std::to_string(v) + " has no path to the final node");
      }
    }

    // A non-consuming cycle: some node reaches itself through a non-empty
    // chain of non-consuming transitions.
    for (size_t v = 0; v < n; ++v) {
      bool cycle = false;
      for (const Transition &t : g.nodes[v]) {
        if (!IsNonConsuming(t, nullable, grammar)) continue;
        if (EmptyReach(g, t.target, nullable, grammar)[v]) {
          cycle = true;
          break;
        }
      }
      if (cycle) {
        report(kError, "empty-cycle", g.name,
               "node " + std::to_string(v) +
                   " lies on a cycle that consumes no token");
        break;
      }
    }
  }

  // Left recursion: G -> H when H is called before any token is consumed.
  std::vector<std::vector<int>> left(count);
  for (size_t gi = 0; gi < count; ++gi) {
    if (!sound[gi]) continue;
    const Graph &g = graphs[gi];
    std::vector<char> prefix = EmptyReach(g, g.initial, nullable, grammar);
    for (size_t v = 0; v < g.nodes.size(); ++v) {
      if (!prefix[v]) continue;
      for (const Transition &t : g.nodes[v]) {
        if (t.kind != Transition::Kind::kCall) continue;
        int callee = grammar.IndexOf(t.text);
        if (callee >= 0) left[gi].push_back(callee);
      }
    }
  }
  for (std::vector<int> component : StronglyConnected(left)) {
    bool cyclic = component.size() > 1;
    if (!cyclic) {
      int v = component.front();
      cyclic = std::find(left[v].begin(), left[v].end(), v) != left[v].end();
    }
    if (!cyclic) continue;
    std::vector<std::string> names;
    for (int v : component) names.push_back(graphs[v].name);
    std::sort(names.begin(), names.end());
    std::string joined;
    for (const std::string &name : names) {
      joined += (joined.empty() ? "" : ", ") + name;
    }
    report(Diagnostic::Severity::kWarning, "left-recursion", names.front(),
           "graphs {" + joined +
               "} call each other without consuming a token; only the depth "
               "bound stops the recursion");
  }
  return out;
}

}  // namespace detgram
