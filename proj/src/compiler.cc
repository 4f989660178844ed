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

#include "detgram/compiler.h"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "detgram/errors.h"

namespace detgram {

namespace {

constexpr size_t kMaxRawStates = 4'000'000;

// Automaton with non-consuming moves, as produced by inlining.
struct RawEdge {
  enum class Kind { kConsume, kEpsilon, kOutput };
  Kind kind;
  int mask;  // kConsume
  std::string output;
  int to;
};

class Inliner {
 public:
  Inliner(const GrammarSet &grammar, int depth_bound)
      : grammar_(grammar), depth_bound_(depth_bound) {}

  // Returns the entry and exit states of a fresh copy of graph `gi`.
  std::pair<int, int> Instantiate(int gi, int depth) {
    const Graph &g = grammar_.graphs()[gi];
    int base = static_cast<int>(states_.size());
    if (states_.size() + g.nodes.size() > kMaxRawStates) {
      throw std::length_error("flattening exceeds " +
                              std::to_string(kMaxRawStates) + " states");
    }
    states_.resize(states_.size() + g.nodes.size());
    for (size_t n = 0; n < g.nodes.size(); ++n) {
      int from = base + static_cast<int>(n);
      for (const Transition &t : g.nodes[n]) {
        int to = base + t.target;
        switch (t.kind) {
          case Transition::Kind::kMask:
            if (t.mask.consuming()) {
              Add(from, {RawEdge::Kind::kConsume, InternMask(t.mask), {}, to});
            } else {
              Add(from, {RawEdge::Kind::kEpsilon, -1, {}, to});
            }
            break;
          case Transition::Kind::kOutput:
            if (t.text.empty()) {
              Add(from, {RawEdge::Kind::kEpsilon, -1, {}, to});
            } else {
              Add(from, {RawEdge::Kind::kOutput, -1, t.text, to});
            }
            break;
          case Transition::Kind::kCall: {
            if (depth + 1 > depth_bound_) break;
            int callee = grammar_.IndexOf(t.text);
            if (callee < 0) {
              throw std::invalid_argument("call to undefined graph '" + t.text +
                                          "'");
            }
            auto [entry, exit] = Instantiate(callee, depth + 1);
            Add(from, {RawEdge::Kind::kEpsilon, -1, {}, entry});
            Add(exit, {RawEdge::Kind::kEpsilon, -1, {}, to});
            break;
          }
        }
      }
    }
    return {base + g.initial, base + g.final};
  }

  const std::vector<std::vector<RawEdge>> &states() const { return states_; }
  const std::vector<LexicalMask> &masks() const { return masks_; }

 private:
  void Add(int from, RawEdge edge) { states_[from].push_back(std::move(edge)); }

  int InternMask(const LexicalMask &mask) {
    std::string key = mask.ToString();
    auto [it, inserted] = mask_ids_.emplace(key, static_cast<int>(masks_.size()));
    if (inserted) masks_.push_back(mask);
    return it->second;
  }

  const GrammarSet &grammar_;
  int depth_bound_;
  std::vector<std::vector<RawEdge>> states_;
  std::vector<LexicalMask> masks_;
  std::map<std::string, int> mask_ids_;
};

using Outputs = std::vector<std::string>;

// States reachable through non-consuming moves, with the outputs collected
// on the way. Memoized per state.
class Closure {
 public:
  explicit Closure(const std::vector<std::vector<RawEdge>> &states)
      : states_(states) {}

  const std::vector<std::pair<int, Outputs>> &Of(int state) {
    auto it = memo_.find(state);
    if (it != memo_.end()) return it->second;
    std::set<std::pair<int, Outputs>> seen;
    std::vector<std::pair<int, Outputs>> stack = {{state, {}}};
    seen.insert(stack.back());
    while (!stack.empty()) {
      auto [s, outs] = stack.back();
      stack.pop_back();
      for (const RawEdge &e : states_[s]) {
        if (e.kind == RawEdge::Kind::kConsume) continue;
        Outputs next = outs;
        if (e.kind == RawEdge::Kind::kOutput) next.push_back(e.output);
        std::pair<int, Outputs> item{e.to, std::move(next)};
        if (seen.insert(item).second) stack.push_back(std::move(item));
      }
    }
    return memo_.emplace(state, std::vector<std::pair<int, Outputs>>(
                                    seen.begin(), seen.end()))
        .first->second;
  }

 private:
  const std::vector<std::vector<RawEdge>> &states_;
  std::map<int, std::vector<std::pair<int, Outputs>>> memo_;
};

std::string JoinOutputs(const Outputs &outs) {
  if (outs.empty()) return "-";
  std::string s;
  for (size_t i = 0; i < outs.size(); ++i) {
    if (i) s.push_back(' ');
    s += outs[i];
  }
  return s;
}

Outputs SplitOutputs(std::string_view field) {
  Outputs outs;
  if (field == "-") return outs;
  size_t start = 0;
  while (start <= field.size()) {
    size_t sp = field.find(' ', start);
    if (sp == std::string_view::npos) sp = field.size();
    if (sp > start) outs.emplace_back(field.substr(start, sp - start));
    start = sp + 1;
  }
  return outs;
}

bool TransitionLess(const FsaTransition &a, const FsaTransition &b) {
  std::string la = a.label.ToString();
  std::string lb = b.label.ToString();
  return std::tie(a.src, la, a.dst, a.pre, a.post) <
         std::tie(b.src, lb, b.dst, b.pre, b.post);
}

void BuildOffsets(Fsa *fsa) {
  fsa->offsets.assign(fsa->num_states + 1, 0);
  for (const FsaTransition &t : fsa->transitions) ++fsa->offsets[t.src + 1];
  for (int s = 0; s < fsa->num_states; ++s) {
    fsa->offsets[s + 1] += fsa->offsets[s];
  }
}

}  // namespace

bool Fsa::IsFinal(int state) const {
  return std::find(finals.begin(), finals.end(), state) != finals.end();
}

Fsa Flatten(const GrammarSet &grammar, std::string_view main, int depth_bound) {
  if (depth_bound < 1) throw std::invalid_argument("depth bound must be >= 1");
  if (!grammar.IsMain(main) || grammar.IndexOf(main) < 0) {
    throw std::out_of_range("no main graph '" + std::string(main) + "'");
  }
  // Non-consuming cycles would make the output closure infinite.
  if (HasErrors(Validate(grammar))) {
    throw std::invalid_argument("grammar has validation errors");
  }

  Inliner inliner(grammar, depth_bound);
  auto [raw_initial, raw_final] = inliner.Instantiate(grammar.IndexOf(main), 0);
  const auto &raw = inliner.states();
  const auto &masks = inliner.masks();
  Closure closure(raw);

  // Epsilon removal over raw state ids; kSink is the single final state.
  constexpr int kSink = -1;
  struct Proto {
    int src;
    int mask;
    Outputs pre;
    Outputs post;
    int dst;
    auto operator<=>(const Proto &) const = default;
  };
  std::set<Proto> protos;
  std::set<int> seen = {raw_initial};
  std::deque<int> queue = {raw_initial};
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (const auto &[r, pre] : closure.Of(q)) {
      for (const RawEdge &e : raw[r]) {
        if (e.kind != RawEdge::Kind::kConsume) continue;
        protos.insert({q, e.mask, pre, {}, e.to});
        if (seen.insert(e.to).second) queue.push_back(e.to);
        for (const auto &[f, post] : closure.Of(e.to)) {
          if (f == raw_final) protos.insert({q, e.mask, pre, post, kSink});
        }
      }
    }
  }

  // Keep states that reach the sink.
  std::map<int, std::vector<const Proto *>> incoming;
  std::map<int, std::vector<const Proto *>> outgoing;
  for (const Proto &p : protos) {
    incoming[p.dst].push_back(&p);
    outgoing[p.src].push_back(&p);
  }
  std::set<int> live = {kSink};
  std::vector<int> stack = {kSink};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const Proto *p : incoming[v]) {
      if (live.insert(p->src).second) stack.push_back(p->src);
    }
  }

  Fsa fsa;
  fsa.name = std::string(main);
  if (!live.count(raw_initial)) {
    BuildOffsets(&fsa);
    return fsa;
  }

  // Breadth-first numbering, visiting transitions in label order.
  std::map<int, int> number;
  std::deque<int> order = {raw_initial};
  number[raw_initial] = 0;
  std::vector<FsaTransition> transitions;
  while (!order.empty()) {
    int v = order.front();
    order.pop_front();
    std::vector<const Proto *> outs;
    for (const Proto *p : outgoing[v]) {
      if (live.count(p->dst)) outs.push_back(p);
    }
    std::stable_sort(outs.begin(), outs.end(),
                     [&](const Proto *a, const Proto *b) {
                       return masks[a->mask].ToString() <
                              masks[b->mask].ToString();
                     });
    for (const Proto *p : outs) {
      auto [it, inserted] =
          number.emplace(p->dst, static_cast<int>(number.size()));
      if (inserted) order.push_back(p->dst);
      transitions.push_back(
          {number.at(v), masks[p->mask], p->pre, p->post, it->second});
    }
  }
  fsa.num_states = static_cast<int>(number.size());
  fsa.initial = 0;
  fsa.finals = {number.at(kSink)};
  std::sort(transitions.begin(), transitions.end(), TransitionLess);
  fsa.transitions = std::move(transitions);
  BuildOffsets(&fsa);
  return fsa;
}

FsaCounts CountStates(const Fsa &fsa) {
  return FsaCounts{static_cast<size_t>(fsa.num_states), fsa.transitions.size()};
}

std::string SerializeFsa(const Fsa &fsa) {
  std::string out = "fsa " + fsa.name + "\n";
  out += "states " + std::to_string(fsa.num_states) + "\n";
  out += "initial " + std::to_string(fsa.initial) + "\n";
  out += "finals";
  for (int f : fsa.finals) out += " " + std::to_string(f);
  out += "\n";
  for (const FsaTransition &t : fsa.transitions) {
    out += std::to_string(t.src) + "\t" + t.label.ToString() + "\t" +
           std::to_string(t.dst) + "\t" + JoinOutputs(t.pre) + "\t" +
           JoinOutputs(t.post) + "\n";
  }
  return out;
}

Fsa ParseFsa(std::string_view text) {
  Fsa fsa;
  size_t line_no = 0;
  size_t pos = 0;
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError("expected a number, got '" + std::string(s) + "'",
                       line_no);
    }
    return v;
  };
  auto field_after = [](std::string_view line, std::string_view key) {
    return line.substr(std::min(line.size(), key.size() + 1));
  };
  bool have_name = false;
  bool have_states = false;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("fsa ", 0) == 0) {
      fsa.name = std::string(field_after(line, "fsa"));
      have_name = true;
    } else if (line.rfind("states ", 0) == 0) {
      fsa.num_states = to_int(field_after(line, "states"));
      if (fsa.num_states < 0) throw ParseError("negative state count", line_no);
      have_states = true;
    } else if (line.rfind("initial ", 0) == 0) {
      fsa.initial = to_int(field_after(line, "initial"));
    } else if (line.rfind("finals", 0) == 0) {
      for (const std::string &f : SplitOutputs(field_after(line, "finals"))) {
        fsa.finals.push_back(to_int(f));
      }
    } else {
      std::vector<std::string_view> fields;
      size_t start = 0;
      for (;;) {
        size_t tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string_view::npos
                                                ? std::string_view::npos
                                                : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
      }
      if (fields.size() != 5) throw ParseError("expected 5 fields", line_no);
      FsaTransition t;
      t.src = to_int(fields[0]);
      try {
        t.label = ParseMask(fields[1]);
      } catch (const std::invalid_argument &e) {
        throw ParseError(e.what(), line_no);
      }
      t.dst = to_int(fields[2]);
      t.pre = SplitOutputs(fields[3]);
      t.post = SplitOutputs(fields[4]);
      if (t.src < 0 || t.src >= fsa.num_states || t.dst < 0 ||
          t.dst >= fsa.num_states) {
        throw ParseError("state out of range", line_no);
      }
      fsa.transitions.push_back(std::move(t));
    }
  }
  if (!have_name || !have_states) {
    throw ParseError("missing 'fsa' or 'states' header", 0);
  }
  bool empty = fsa.num_states == 0;
  if (empty ? fsa.initial != -1
            : fsa.initial < 0 || fsa.initial >= fsa.num_states) {
    throw ParseError("initial state out of range", 0);
  }
  for (int f : fsa.finals) {
    if (f < 0 || f >= fsa.num_states) {
      throw ParseError("final state out of range", 0);
    }
  }
  std::stable_sort(fsa.transitions.begin(), fsa.transitions.end(),
                   [](const FsaTransition &a, const FsaTransition &b) {
                     return a.src < b.src;
                   });
  BuildOffsets(&fsa);
  return fsa;
}

std::vector<PathResult> RunFsa(const Fsa &fsa, const AnalyzedText &text,
                               size_t start) {
  std::set<PathResult> results;
  if (fsa.initial < 0 || start >= text.size()) return {};
  struct Item {
    int state;
    size_t pos;
    std::vector<Emission> emissions;
    auto operator<=>(const Item &) const = default;
  };
  std::set<Item> seen;
  std::vector<Item> stack = {{fsa.initial, start, {}}};
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    if (item.pos >= text.size()) continue;
    for (size_t i = fsa.offsets[item.state]; i < fsa.offsets[item.state + 1];
         ++i) {
      const FsaTransition &t = fsa.transitions[i];
      if (!text.Matches(t.label, item.pos)) continue;
      Item next{t.dst, item.pos + 1, item.emissions};
      for (const std::string &o : t.pre) next.emissions.push_back({item.pos, o});
      for (const std::string &o : t.post) {
        next.emissions.push_back({item.pos + 1, o});
      }
      if (fsa.IsFinal(t.dst)) results.insert({next.pos, next.emissions});
      if (fsa.offsets[t.dst] != fsa.offsets[t.dst + 1] && seen.insert(next).second) {
        stack.push_back(std::move(next));
      }
    }
  }
  return {results.begin(), results.end()};
}

}  // namespace detgram
