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

#include "detgram/grammar.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "detgram/errors.h"

namespace detgram {

namespace {

constexpr std::string_view kTagOutputs[] = {"<d>",  "</d>",  "<ad>",
                                            "</ad>", "<dd>", "</dd>"};

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

// Splits off the next whitespace-delimited word.
std::string_view NextWord(std::string_view *rest) {
  std::string_view s = *rest;
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  size_t end = 0;
  while (end < s.size() && !IsSpace(s[end])) ++end;
  std::string_view word = s.substr(0, end);
  *rest = s.substr(end);
  return word;
}

bool ParseInt(std::string_view s, int *out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && *out >= 0;
}

bool NeedsQuotes(std::string_view literal) {
  if (literal.empty()) return true;
  char c = literal.front();
  if (c == '<' || c == ':' || c == '{' || c == '"') return true;
  return literal.find_first_of(" \t\r\n\"\\") != std::string_view::npos;
}

std::string Quote(std::string_view literal) {
  std::string out = "\"";
  for (char c : literal) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// Reads a quoted literal at the start of *rest (after leading spaces).
std::string ReadQuoted(std::string_view *rest, size_t line_no) {
  std::string_view s = *rest;
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  std::string out;
  size_t i = 1;
  for (; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      out.push_back(s[++i]);
    } else if (s[i] == '"') {
      break;
    } else {
      out.push_back(s[i]);
    }
  }
  if (i >= s.size()) throw ParseError("unterminated quoted literal", line_no);
  *rest = s.substr(i + 1);
  return out;
}

Transition ParseLabel(std::string_view label, int target, size_t line_no) {
  if (label.front() == ':') {
    if (label.size() == 1) throw ParseError("empty call name", line_no);
    return Transition::Call(std::string(label.substr(1)), target);
  }
  if (label.front() == '{') {
    if (label.back() != '}') throw ParseError("unterminated output", line_no);
    std::string text(label.substr(1, label.size() - 2));
    if (!text.empty() && !IsTagOutput(text)) {
      throw ParseError("unknown output '" + text + "'", line_no);
    }
    return Transition::Output(std::move(text), target);
  }
  try {
    return Transition::Mask(ParseMask(label), target);
  } catch (const std::invalid_argument &e) {
    throw ParseError(e.what(), line_no);
  }
}

}  // namespace

Transition Transition::Mask(LexicalMask mask, int target) {
  Transition t;
  t.kind = Kind::kMask;
  t.mask = std::move(mask);
  t.target = target;
  return t;
}

Transition Transition::Call(std::string graph, int target) {
  Transition t;
  t.kind = Kind::kCall;
  t.text = std::move(graph);
  t.target = target;
  return t;
}

Transition Transition::Output(std::string text, int target) {
  Transition t;
  t.kind = Kind::kOutput;
  t.text = std::move(text);
  t.target = target;
  return t;
}

std::string Transition::Label() const {
  switch (kind) {
    case Kind::kCall:
      return ":" + text;
    case Kind::kOutput:
      return "{" + text + "}";
    case Kind::kMask:
      break;
  }
  if (mask.kind == LexicalMask::Kind::kLiteral && NeedsQuotes(mask.literal)) {
    return Quote(mask.literal);
  }
  return mask.ToString();
}

size_t Graph::TransitionCount() const {
  size_t n = 0;
  for (const auto &node : nodes) n += node.size();
  return n;
}

bool IsTagOutput(std::string_view text) {
  return std::find(std::begin(kTagOutputs), std::end(kTagOutputs), text) !=
         std::end(kTagOutputs);
}

void GrammarSet::AddGraph(Graph graph) {
  if (index_.count(graph.name)) {
    throw std::invalid_argument("duplicate graph '" + graph.name + "'");
  }
  index_.emplace(graph.name, static_cast<int>(graphs_.size()));
  graphs_.push_back(std::move(graph));
}

const Graph *GrammarSet::Find(std::string_view name) const {
  int i = IndexOf(name);
  return i < 0 ? nullptr : &graphs_[i];
}

int GrammarSet::IndexOf(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

bool GrammarSet::IsMain(std::string_view name) const {
  return std::find(mains_.begin(), mains_.end(), name) != mains_.end();
}

GrammarSet ParseGrammar(std::string_view text) {
  GrammarSet grammar;
  Graph current;
  bool open = false;
  bool have_nodes = false;
  bool have_final = false;
  size_t graph_line = 0;
  std::vector<std::pair<std::string, size_t>> calls;

  auto close = [&]() {
    if (!open) return;
    if (!have_nodes) throw ParseError("graph without 'nodes'", graph_line);
    if (!have_final) throw ParseError("graph without 'final'", graph_line);
    try {
      grammar.AddGraph(std::move(current));
    } catch (const std::invalid_argument &e) {
      throw ParseError(e.what(), graph_line);
    }
    current = Graph();
    open = false;
  };

  auto check_node = [&](int id, size_t line_no) {
    if (id >= static_cast<int>(current.nodes.size())) {
      throw ParseError("undeclared node " + std::to_string(id), line_no);
    }
  };

  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = Trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::string_view rest = line;
    std::string_view head = NextWord(&rest);

    if (head == "graph") {
      close();
      std::string_view name = NextWord(&rest);
      if (name.empty()) throw ParseError("graph without a name", line_no);
      std::string_view flag = NextWord(&rest);
      if (!flag.empty() && flag != "@main") {
        throw ParseError("unexpected '" + std::string(flag) + "'", line_no);
      }
      if (!Trim(rest).empty()) throw ParseError("trailing text", line_no);
      current.name = std::string(name);
      if (flag == "@main") {
        if (grammar.IsMain(name)) {
          throw ParseError("duplicate graph '" + current.name + "'", line_no);
        }
        grammar.AddMain(current.name);
      }
      open = true;
      have_nodes = have_final = false;
      graph_line = line_no;
      continue;
    }

    if (!open) throw ParseError("statement outside of a graph", line_no);

    if (head == "nodes" || head == "initial" || head == "final") {
      int value;
      if (!ParseInt(NextWord(&rest), &value) || !Trim(rest).empty()) {
        throw ParseError("expected '" + std::string(head) + " <number>'",
                         line_no);
      }
      if (head == "nodes") {
        if (have_nodes) throw ParseError("'nodes' given twice", line_no);
        if (value < 1) throw ParseError("a graph needs a node", line_no);
        current.nodes.resize(value);
        have_nodes = true;
      } else {
        if (!have_nodes) throw ParseError("'nodes' must come first", line_no);
        check_node(value, line_no);
        (head == "initial" ? current.initial : current.final) = value;
        if (head == "final") have_final = true;
      }
      continue;
    }

    int src;
    if (!ParseInt(head, &src)) {
      throw ParseError("unknown statement '" + std::string(head) + "'",
                       line_no);
    }
    if (!have_nodes) throw ParseError("'nodes' must come first", line_no);
    check_node(src, line_no);

    std::string quoted;
    std::string_view label;
    bool is_quoted = !Trim(rest).empty() && Trim(rest).front() == '"';
    if (is_quoted) {
      quoted = ReadQuoted(&rest, line_no);
      if (quoted.empty()) throw ParseError("empty literal", line_no);
    } else {
      label = NextWord(&rest);
      if (label.empty()) throw ParseError("missing label", line_no);
    }
    int dst;
    if (!ParseInt(NextWord(&rest), &dst)) {
      throw ParseError("missing target node", line_no);
    }
    if (!Trim(rest).empty()) throw ParseError("trailing text", line_no);
    check_node(dst, line_no);

    Transition t = is_quoted ? Transition::Mask(LexicalMask::Literal(quoted), dst)
                             : ParseLabel(label, dst, line_no);
    if (t.kind == Transition::Kind::kCall) calls.emplace_back(t.text, line_no);
    current.Add(src, std::move(t));
  }
  close();

  if (grammar.empty()) throw ParseError("no graph defined", 0);
  for (const auto &[name, call_line] : calls) {
    if (!grammar.Find(name)) {
      throw ParseError("call to undefined graph '" + name + "'", call_line);
    }
  }
  for (const std::string &main : grammar.mains()) {
    if (!grammar.Find(main)) throw ParseError("unknown main '" + main + "'", 0);
  }
  return grammar;
}

std::string SerializeGrammar(const GrammarSet &grammar) {
  std::string out;
  bool first = true;
  for (const Graph &g : grammar.graphs()) {
    if (!first) out += "\n";
    first = false;
    out += "graph " + g.name;
    if (grammar.IsMain(g.name)) out += " @main";
    out += "\n";
    out += "  nodes " + std::to_string(g.nodes.size()) + "\n";
    out += "  initial " + std::to_string(g.initial) + "\n";
    out += "  final " + std::to_string(g.final) + "\n";
    for (size_t n = 0; n < g.nodes.size(); ++n) {
      for (const Transition &t : g.nodes[n]) {
        out += "  " + std::to_string(n) + " " + t.Label() + " " +
               std::to_string(t.target) + "\n";
      }
    }
  }
  return out;
}

std::string Diagnostic::ToString() const {
  std::string out = severity == Severity::kError ? "error" : "warning";
  out += " [" + code + "]";
  if (!graph.empty()) out += " " + graph;
  out += ": " + message;
  return out;
}

bool HasErrors(const std::vector<Diagnostic> &diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic &d) {
                       return d.severity == Diagnostic::Severity::kError;
                     });
}

GrammarStats Stats(const GrammarSet &grammar) {
  GrammarStats stats;
  std::set<std::string> literals;
  for (const Graph &g : grammar.graphs()) {
    ++stats.graphs;
    for (const auto &node : g.nodes) {
      for (const Transition &t : node) {
        ++stats.transitions;
        if (t.kind == Transition::Kind::kMask &&
            t.mask.kind == LexicalMask::Kind::kLiteral) {
          literals.insert(t.mask.literal);
        }
      }
    }
  }
  stats.distinct_literals = literals.size();
  stats.mains = grammar.mains();
  return stats;
}

}  // namespace detgram
