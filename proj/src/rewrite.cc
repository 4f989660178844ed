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

#include "detgram/rewrite.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "detgram/errors.h"
#include "detgram/text.h"

namespace detgram {

namespace {

// Pending items: literals, and tag outputs met while literals were pending
// (marked with a leading kOutputMark so that they keep their place).
using Buffer = std::vector<std::string>;

constexpr char kOutputMark = '\x01';

bool IsOutputItem(const std::string &item) {
  return !item.empty() && item.front() == kOutputMark;
}

std::string OutputItem(const std::string &text) {
  return std::string(1, kOutputMark) + text;
}

std::string Join(const std::vector<std::string> &tokens, char sep) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(sep);
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> SplitPlus(std::string_view s) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t plus = s.find('+', start);
    out.emplace_back(s.substr(start, plus == std::string_view::npos
                                          ? std::string_view::npos
                                          : plus - start));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Left-to-right rewriting with one literal of lookahead, run incrementally.
// The state is the list of literals read but not yet emitted because a rule
// could still match them. Outputs between pending literals are invisible to
// the rules and are emitted right after the rewrite that covers them.
class Transducer {
 public:
  struct Alternative {
    std::vector<std::string> emitted;
    Buffer pending;
  };

  explicit Transducer(const std::vector<RewriteRule> &rules) : rules_(rules) {}

  // Reads one literal. Never branches.
  std::vector<Alternative> Feed(const Buffer &pending,
                                const std::string &literal) {
    Buffer buffer = pending;
    buffer.push_back(literal);
    std::vector<Alternative> out;
    Resolve(buffer, 0, false, 0, {}, &out);
    return out;
  }

  // Flushes before something that is not a literal. May branch on
  // vowel-conditional rules.
  std::vector<Alternative> Close(const Buffer &pending) {
    std::vector<Alternative> out;
    Resolve(pending, 0, true, 0, {}, &out);
    return out;
  }

  const std::set<std::pair<size_t, size_t>> &overlaps() const {
    return overlaps_;
  }

 private:
  enum class Outcome { kNoMatch, kMatch, kWait, kBoth };

  // Matches rule.from against the literals from `offset` on. On a match,
  // *end is the buffer index right after the last matched literal.
  Outcome Test(const RewriteRule &rule, const Buffer &buffer, size_t offset,
               bool closed, size_t *end = nullptr) const {
    std::vector<size_t> literals;
    for (size_t i = offset; i < buffer.size(); ++i) {
      if (!IsOutputItem(buffer[i])) literals.push_back(i);
    }
    size_t available = literals.size();
    size_t k = rule.from.size();
    for (size_t i = 0; i < std::min(available, k); ++i) {
      if (buffer[literals[i]] != rule.from[i]) return Outcome::kNoMatch;
    }
    if (available < k) return closed ? Outcome::kNoMatch : Outcome::kWait;
    if (end) *end = literals[k - 1] + 1;
    if (!rule.if_vowel) return Outcome::kMatch;
    if (available > k) {
      return StartsWithVowel(buffer[literals[k]]) ? Outcome::kMatch
                                                  : Outcome::kNoMatch;
    }
    return closed ? Outcome::kBoth : Outcome::kWait;
  }

  // The rewrite of buffer[offset, end) by `rule`: its right-hand side, then
  // the outputs that were interleaved with the matched literals.
  static void Fire(const RewriteRule &rule, const Buffer &buffer,
                   size_t offset, size_t end,
                   std::vector<std::string> *emitted) {
    emitted->insert(emitted->end(), rule.to.begin(), rule.to.end());
    for (size_t i = offset; i < end; ++i) {
      if (IsOutputItem(buffer[i])) emitted->push_back(buffer[i]);
    }
  }

  void Resolve(const Buffer &buffer, size_t offset, bool closed,
               size_t first_rule, std::vector<std::string> emitted,
               std::vector<Alternative> *out) {
    if (offset == buffer.size()) {
      out->push_back({std::move(emitted), {}});
      return;
    }
    if (IsOutputItem(buffer[offset])) {
      emitted.push_back(buffer[offset]);
      Resolve(buffer, offset + 1, closed, 0, std::move(emitted), out);
      return;
    }
    for (size_t r = first_rule; r < rules_.size(); ++r) {
      const RewriteRule &rule = rules_[r];
      size_t end = offset;
      switch (Test(rule, buffer, offset, closed, &end)) {
        case Outcome::kNoMatch:
          continue;
        case Outcome::kWait:
          out->push_back(
              {std::move(emitted), Buffer(buffer.begin() + offset, buffer.end())});
          return;
        case Outcome::kMatch: {
          NoteOverlaps(r, buffer, offset, closed);
          std::vector<std::string> fired = emitted;
          Fire(rule, buffer, offset, end, &fired);
          Resolve(buffer, end, closed, 0, std::move(fired), out);
          return;
        }
        case Outcome::kBoth: {
          std::vector<std::string> fired = emitted;
          Fire(rule, buffer, offset, end, &fired);
          Resolve(buffer, end, closed, 0, std::move(fired), out);
          Resolve(buffer, offset, closed, r + 1, std::move(emitted), out);
          return;
        }
      }
    }
    emitted.push_back(buffer[offset]);
    Resolve(buffer, offset + 1, closed, 0, std::move(emitted), out);
  }

  void NoteOverlaps(size_t winner, const Buffer &buffer, size_t offset,
                    bool closed) {
    for (size_t r = winner + 1; r < rules_.size(); ++r) {
      Outcome o = Test(rules_[r], buffer, offset, closed);
      if (o == Outcome::kMatch || o == Outcome::kBoth) {
        overlaps_.emplace(winner, r);
      }
    }
  }

  const std::vector<RewriteRule> &rules_;
  std::set<std::pair<size_t, size_t>> overlaps_;
};

// Label chain of one product edge; an empty chain is an epsilon move.
struct Edge {
  int from;
  std::vector<Transition> chain;  // targets are filled in when expanding
  int to;
};

// A graph specialized by the pending literals it is entered with.
struct InstanceKey {
  int graph;
  int entry;
  auto operator<=>(const InstanceKey &) const = default;
};

struct CallSite {
  int graph;
  int entry;
  int exit;
  auto operator<=>(const CallSite &) const = default;
};

class SurfaceBuilder {
 public:
  SurfaceBuilder(const GrammarSet &grammar,
                 const std::vector<RewriteRule> &rules)
      : grammar_(grammar), rules_(rules), transducer_(rules) {
    Intern({});
  }

  SurfaceResult Build() {
    ComputeExits();

    SurfaceResult result;
    std::deque<CallSite> queue;
    std::set<CallSite> queued;
    std::vector<Graph> instances;

    for (const std::string &main : grammar_.mains()) {
      int gi = grammar_.IndexOf(main);
      Product product = Explore({gi, 0});
      int sink = product.AddNode();
      const Graph &g = grammar_.graphs()[gi];
      for (const auto &[key, id] : product.ids) {
        if (key.first != g.final) continue;
        for (auto &alt : transducer_.Close(states_[key.second])) {
          product.edges.push_back({id, LiteralChain(alt.emitted), sink});
        }
      }
      Graph out = Materialize(product, sink, main, &queue, &queued);
      result.grammar.AddGraph(std::move(out));
      result.grammar.AddMain(main);
    }

    while (!queue.empty()) {
      CallSite site = queue.front();
      queue.pop_front();
      Product product = Explore({site.graph, site.entry});
      const Graph &g = grammar_.graphs()[site.graph];
      int final = product.ids.at({g.final, site.exit});
      instances.push_back(
          Materialize(product, final, InstanceName(site), &queue, &queued));
    }
    for (Graph &g : instances) result.grammar.AddGraph(std::move(g));

    for (const auto &[a, b] : transducer_.overlaps()) {
      result.diagnostics.push_back(Diagnostic{
          Diagnostic::Severity::kWarning, "rewrite-overlap", "",
          "rules " + std::to_string(a + 1) + " (" + rules_[a].ToString() +
              ") and " + std::to_string(b + 1) + " (" + rules_[b].ToString() +
              ") apply at the same position; rule " + std::to_string(a + 1) +
              " is used"});
    }
    return result;
  }

 private:
  struct Product {
    std::map<std::pair<int, int>, int> ids;  // (node, state) -> product id
    std::vector<std::pair<int, int>> keys;
    std::vector<Edge> edges;
    int size = 0;

    int Id(int node, int state, std::deque<int> *frontier) {
      auto [it, inserted] = ids.emplace(std::make_pair(node, state), size);
      if (inserted) {
        keys.emplace_back(node, state);
        frontier->push_back(size);
        ++size;
      }
      return it->second;
    }
    int AddNode() { return size++; }
  };

  int Intern(const Buffer &buffer) {
    auto [it, inserted] = state_ids_.emplace(buffer, states_.size());
    if (inserted) states_.push_back(buffer);
    return it->second;
  }

  static std::vector<Transition> LiteralChain(
      const std::vector<std::string> &literals) {
    std::vector<Transition> chain;
    for (const std::string &item : literals) {
      if (IsOutputItem(item)) {
        chain.push_back(Transition::Output(item.substr(1), 0));
      } else {
        chain.push_back(Transition::Mask(LexicalMask::Literal(item), 0));
      }
    }
    return chain;
  }

  std::string InstanceName(const CallSite &site) const {
    const std::string &name = grammar_.graphs()[site.graph].name;
    if (site.entry == 0 && site.exit == 0 && !grammar_.IsMain(name)) {
      return name;
    }
    auto show = [](const Buffer &buffer) {
      Buffer shown;
      for (const std::string &item : buffer) {
        shown.push_back(IsOutputItem(item) ? "{" + item.substr(1) + "}" : item);
      }
      return Join(shown, '+');
    };
    return name + "/" + show(states_[site.entry]) + "/" +
           show(states_[site.exit]);
  }

  // Product of one graph with the transducer, using the current exit sets
  // for calls. Records callee instances it needs in `wanted`.
  Product Explore(InstanceKey key, std::set<InstanceKey> *wanted = nullptr) {
    const Graph &g = grammar_.graphs()[key.graph];
    Product p;
    std::deque<int> frontier;
    p.Id(g.initial, key.entry, &frontier);
    while (!frontier.empty()) {
      int id = frontier.front();
      frontier.pop_front();
      auto [node, state] = p.keys[id];
      for (const Transition &t : g.nodes[node]) {
        switch (t.kind) {
          case Transition::Kind::kOutput:
            if (states_[state].empty() || t.text.empty()) {
              p.edges.push_back({id, {Transition::Output(t.text, 0)},
                                 p.Id(t.target, state, &frontier)});
            } else {
              Buffer held = states_[state];
              held.push_back(OutputItem(t.text));
              int next = Intern(held);
              p.edges.push_back({id, {}, p.Id(t.target, next, &frontier)});
            }
            break;
          case Transition::Kind::kCall: {
            int callee = grammar_.IndexOf(t.text);
            InstanceKey ck{callee, state};
            if (wanted) wanted->insert(ck);
            auto it = exits_.find(ck);
            if (it == exits_.end()) break;
            for (int exit : it->second) {
              p.edges.push_back(
                  {id,
                   {Transition::Call(std::to_string(callee) + "|" +
                                         std::to_string(state) + "|" +
                                         std::to_string(exit),
                                     0)},
                   p.Id(t.target, exit, &frontier)});
            }
            break;
          }
          case Transition::Kind::kMask: {
            const LexicalMask &mask = t.mask;
            if (mask.kind == LexicalMask::Kind::kEpsilon) {
              p.edges.push_back({id, {}, p.Id(t.target, state, &frontier)});
            } else if (mask.kind == LexicalMask::Kind::kLiteral) {
              for (auto &alt : transducer_.Feed(states_[state], mask.literal)) {
                int next = Intern(alt.pending);
                p.edges.push_back({id, LiteralChain(alt.emitted),
                                   p.Id(t.target, next, &frontier)});
              }
            } else {
              for (auto &alt : transducer_.Close(states_[state])) {
                std::vector<Transition> chain = LiteralChain(alt.emitted);
                chain.push_back(Transition::Mask(mask, 0));
                p.edges.push_back(
                    {id, std::move(chain), p.Id(t.target, 0, &frontier)});
              }
            }
            break;
          }
        }
      }
    }
    return p;
  }

  // Least fixpoint of the exit states each instance can reach its final
  // node with.
  void ComputeExits() {
    std::vector<InstanceKey> keys;
    std::set<InstanceKey> known;
    for (const std::string &main : grammar_.mains()) {
      InstanceKey k{grammar_.IndexOf(main), 0};
      if (known.insert(k).second) keys.push_back(k);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t i = 0; i < keys.size(); ++i) {
        InstanceKey key = keys[i];
        std::set<InstanceKey> wanted;
        Product p = Explore(key, &wanted);
        for (const InstanceKey &w : wanted) {
          if (known.insert(w).second) {
            keys.push_back(w);
            changed = true;
          }
        }
        const Graph &g = grammar_.graphs()[key.graph];
        std::set<int> &exits = exits_[key];
        for (const auto &[node_state, id] : p.ids) {
          if (node_state.first == g.final &&
              exits.insert(node_state.second).second) {
            changed = true;
          }
        }
      }
    }
  }

  // Trims the product to nodes on a path from its start to `final`, numbers
  // nodes breadth first and expands label chains into transitions.
  Graph Materialize(const Product &p, int final, const std::string &name,
                    std::deque<CallSite> *queue, std::set<CallSite> *queued) {
    std::vector<std::vector<int>> reverse(p.size);
    std::vector<std::vector<const Edge *>> out_edges(p.size);
    for (const Edge &e : p.edges) {
      reverse[e.to].push_back(e.from);
      out_edges[e.from].push_back(&e);
    }
    std::vector<char> live(p.size, 0);
    std::vector<int> stack = {final};
    live[final] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : reverse[v]) {
        if (!live[u]) {
          live[u] = 1;
          stack.push_back(u);
        }
      }
    }

    Graph g;
    g.name = name;
    std::vector<int> number(p.size, -1);
    std::deque<int> order;
    auto visit = [&](int v) {
      if (number[v] < 0) {
        number[v] = g.AddNode();
        order.push_back(v);
      }
      return number[v];
    };
    if (!live[0]) throw std::logic_error("empty surface graph " + name);
    g.initial = visit(0);
    while (!order.empty()) {
      int v = order.front();
      order.pop_front();
      for (const Edge *e : out_edges[v]) {
        if (!live[e->to]) continue;
        int from = number[v];
        int to = visit(e->to);
        if (e->chain.empty()) {
          g.Add(from, Transition::Mask(LexicalMask::Epsilon(), to));
          continue;
        }
        for (size_t i = 0; i < e->chain.size(); ++i) {
          Transition t = e->chain[i];
          int target = i + 1 == e->chain.size() ? to : g.AddNode();
          t.target = target;
          if (t.kind == Transition::Kind::kCall) {
            CallSite site = DecodeCall(t.text);
            t.text = InstanceName(site);
            if (queued->insert(site).second) queue->push_back(site);
          }
          g.Add(from, std::move(t));
          from = target;
        }
      }
    }
    g.final = number[final];
    return g;
  }

  static CallSite DecodeCall(const std::string &text) {
    size_t a = text.find('|');
    size_t b = text.find('|', a + 1);
    return CallSite{std::stoi(text.substr(0, a)),
                    std::stoi(text.substr(a + 1, b - a - 1)),
                    std::stoi(text.substr(b + 1))};
  }

  const GrammarSet &grammar_;
  const std::vector<RewriteRule> &rules_;
  Transducer transducer_;
  std::map<Buffer, int> state_ids_;
  std::vector<Buffer> states_;
  std::map<InstanceKey, std::set<int>> exits_;
};

}  // namespace

std::string RewriteRule::ToString() const {
  std::string out = Join(from, '+') + " -> " + Join(to, '+');
  if (if_vowel) out += " if-vowel";
  return out;
}

std::vector<RewriteRule> ParseRewriteTable(std::string_view text) {
  std::vector<RewriteRule> rules;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    size_t arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError("missing '->'", line_no);
    std::string_view lhs = Trim(line.substr(0, arrow));
    std::string_view rhs = Trim(line.substr(arrow + 2));
    RewriteRule rule;
    constexpr std::string_view kIfVowel = "if-vowel";
    if (rhs.size() >= kIfVowel.size() &&
        rhs.substr(rhs.size() - kIfVowel.size()) == kIfVowel) {
      rule.if_vowel = true;
      rhs = Trim(rhs.substr(0, rhs.size() - kIfVowel.size()));
    }
    if (lhs.empty() || rhs.empty()) throw ParseError("empty rule side", line_no);
    if (lhs.find_first_of(" \t") != std::string_view::npos ||
        rhs.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("tokens must be joined with '+'", line_no);
    }
    rule.from = SplitPlus(lhs);
    rule.to = SplitPlus(rhs);
    for (const auto *side : {&rule.from, &rule.to}) {
      for (const std::string &tok : *side) {
        if (tok.empty()) throw ParseError("empty token", line_no);
      }
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

SurfaceResult Surfaceize(const GrammarSet &grammar,
                         const std::vector<RewriteRule> &rules) {
  std::vector<Diagnostic> diagnostics = Validate(grammar);
  if (HasErrors(diagnostics)) {
    std::string message = "grammar has validation errors:";
    for (const Diagnostic &d : diagnostics) {
      if (d.severity == Diagnostic::Severity::kError) {
        message += "\n  " + d.ToString();
      }
    }
    throw std::invalid_argument(message);
  }
  return SurfaceBuilder(grammar, rules).Build();
}

}  // namespace detgram
