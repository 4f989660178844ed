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

#include "detgram/evaluator.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "detgram/errors.h"
#include "json.hpp"

namespace detgram {

namespace {

constexpr std::array<Tag, 3> kTags = {Tag::kD, Tag::kAd, Tag::kDd};
constexpr std::array<const char *, 3> kColumnNames = {"Det", "aDet", "deDet"};

bool IsAsciiLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool Overlap(const Span &a, const Span &b) {
  return a.start < b.end && b.start < a.end;
}

// Indices of `spans` not in `used`, in text order.
std::vector<size_t> Remaining(const std::vector<Span> &spans,
                              const std::vector<bool> &used) {
  std::vector<size_t> rest;
  for (size_t i = 0; i < spans.size(); ++i) {
    if (!used[i]) rest.push_back(i);
  }
  std::sort(rest.begin(), rest.end(), [&](size_t a, size_t b) {
    return std::tie(spans[a].start, spans[a].end) <
           std::tie(spans[b].start, spans[b].end);
  });
  return rest;
}

std::string Display(std::string_view raw, const Span &span) {
  std::string text(raw.substr(span.start, span.end - span.start));
  for (char &c : text) {
    if (c == '\n' || c == '\t' || c == '\r') c = ' ';
  }
  return text;
}

std::vector<ErrorItem> CollectErrors(const Alignment &alignment,
                                     const std::vector<Span> &gold,
                                     const std::vector<Span> &hyp) {
  std::vector<ErrorItem> items;
  for (const auto &[g, h] : alignment.tag_mismatch) {
    items.push_back({"tag_mismatch", "reference", gold[g]});
    items.push_back({"tag_mismatch", "parser", hyp[h]});
  }
  for (size_t g : alignment.boundary_gold) {
    items.push_back({"boundary_mismatch", "reference", gold[g]});
  }
  for (size_t h : alignment.boundary_hyp) {
    items.push_back({"boundary_mismatch", "parser", hyp[h]});
  }
  for (size_t g : alignment.missed) {
    items.push_back({"missed", "reference", gold[g]});
  }
  for (size_t h : alignment.spurious) {
    items.push_back({"spurious", "parser", hyp[h]});
  }
  std::sort(items.begin(), items.end(),
            [](const ErrorItem &a, const ErrorItem &b) {
              // Reference lines come first on equal spans.
              bool a_parser = a.side == "parser";
              bool b_parser = b.side == "parser";
              return std::tie(a.span.start, a.span.end, a_parser, a.kind) <
                     std::tie(b.span.start, b.span.end, b_parser, b.kind);
            });
  return items;
}

const Alignment &ErrorAlignment(const EvalReport &report, ReportMode mode) {
  return mode == ReportMode::kMerged ? report.merged_alignment
                                     : report.per_tag_alignment;
}

}  // namespace

GoldCorpus ParseAnnotated(std::string_view text) {
  GoldCorpus corpus;
  corpus.raw.reserve(text.size());
  bool open = false;
  Tag open_tag = Tag::kD;
  size_t open_offset = 0;
  size_t open_raw = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '<') {
      size_t j = i + 1;
      bool closing = j < text.size() && text[j] == '/';
      if (closing) ++j;
      size_t name_start = j;
      while (j < text.size() && IsAsciiLetter(text[j])) ++j;
      if (j > name_start && j < text.size() && text[j] == '>') {
        std::string_view name = text.substr(name_start, j - name_start);
        auto tag = ParseTag(name);
        if (!tag) {
          throw FormatError("unknown tag <" + std::string(name) + ">", i);
        }
        if (!closing) {
          if (open) {
            throw FormatError("tag <" + std::string(name) + "> nested in <" +
                                  TagName(open_tag) + ">",
                              i);
          }
          open = true;
          open_tag = *tag;
          open_offset = i;
          open_raw = corpus.raw.size();
        } else {
          if (!open) {
            throw FormatError("closing </" + std::string(name) +
                                  "> without an opening tag",
                              i);
          }
          if (*tag != open_tag) {
            throw FormatError("closing </" + std::string(name) +
                                  "> does not match <" + TagName(open_tag) +
                                  ">",
                              i);
          }
          if (corpus.raw.size() == open_raw) {
            throw FormatError("empty annotation", open_offset);
          }
          corpus.spans.push_back({open_tag, open_raw, corpus.raw.size()});
          open = false;
        }
        i = j + 1;
        continue;
      }
    }
    corpus.raw.push_back(text[i++]);
  }
  if (open) {
    throw FormatError(std::string("unclosed <") + TagName(open_tag) + ">",
                      open_offset);
  }
  return corpus;
}

std::string SerializeAnnotated(const GoldCorpus &corpus) {
  std::vector<Annotation> annotations;
  for (const Span &s : corpus.spans) {
    Annotation a;
    a.tag = s.tag;
    a.start = s.start;
    a.end = s.end;
    annotations.push_back(a);
  }
  return InsertTags(corpus.raw, annotations);
}

std::vector<Span> SpansOf(const std::vector<Annotation> &annotations) {
  std::vector<Span> spans;
  spans.reserve(annotations.size());
  for (const Annotation &a : annotations) spans.push_back({a.tag, a.start, a.end});
  return spans;
}

void CheckSameText(std::string_view reference, std::string_view hypothesis) {
  size_t n = std::min(reference.size(), hypothesis.size());
  for (size_t i = 0; i < n; ++i) {
    if (reference[i] != hypothesis[i]) {
      throw FormatError("reference and parser texts differ", i);
    }
  }
  if (reference.size() != hypothesis.size()) {
    throw FormatError("reference and parser texts differ", n);
  }
}

Alignment Align(const std::vector<Span> &gold, const std::vector<Span> &hyp,
                AlignMode mode) {
  Alignment alignment;
  std::map<std::pair<size_t, size_t>, size_t> hyp_at;
  for (size_t h = 0; h < hyp.size(); ++h) {
    hyp_at.emplace(std::make_pair(hyp[h].start, hyp[h].end), h);
  }
  std::vector<bool> gold_used(gold.size()), hyp_used(hyp.size());
  for (size_t g = 0; g < gold.size(); ++g) {
    auto it = hyp_at.find({gold[g].start, gold[g].end});
    if (it == hyp_at.end() || hyp_used[it->second]) continue;
    size_t h = it->second;
    if (mode == AlignMode::kMerged || gold[g].tag == hyp[h].tag) {
      alignment.matched.emplace_back(g, h);
    } else {
      alignment.tag_mismatch.emplace_back(g, h);
    }
    gold_used[g] = hyp_used[h] = true;
  }

  // Both sides are disjoint and sorted, so one sweep finds every overlap.
  std::vector<size_t> rest_gold = Remaining(gold, gold_used);
  std::vector<size_t> rest_hyp = Remaining(hyp, hyp_used);
  std::vector<bool> gold_overlaps(gold.size()), hyp_overlaps(hyp.size());
  size_t i = 0, j = 0;
  while (i < rest_gold.size() && j < rest_hyp.size()) {
    const Span &g = gold[rest_gold[i]];
    const Span &h = hyp[rest_hyp[j]];
    if (Overlap(g, h)) {
      gold_overlaps[rest_gold[i]] = hyp_overlaps[rest_hyp[j]] = true;
    }
    if (g.end <= h.end) {
      ++i;
    } else {
      ++j;
    }
  }
  for (size_t g : rest_gold) {
    (gold_overlaps[g] ? alignment.boundary_gold : alignment.missed).push_back(g);
  }
  for (size_t h : rest_hyp) {
    (hyp_overlaps[h] ? alignment.boundary_hyp : alignment.spurious).push_back(h);
  }
  return alignment;
}

Score MakeScore(size_t gold, size_t hyp, size_t matched) {
  Score s;
  s.gold = gold;
  s.hyp = hyp;
  s.matched = matched;
  s.precision = hyp == 0 ? 1.0 : static_cast<double>(matched) / hyp;
  s.recall = gold == 0 ? 1.0 : static_cast<double>(matched) / gold;
  return s;
}

EvalReport Evaluate(const GoldCorpus &gold, const std::vector<Span> &hyp) {
  for (const Span &s : hyp) {
    if (s.start >= s.end || s.end > gold.raw.size()) {
      throw std::invalid_argument("parser span [" + std::to_string(s.start) +
                                  ", " + std::to_string(s.end) +
                                  ") exceeds the text");
    }
  }
  EvalReport report;
  report.merged_alignment = Align(gold.spans, hyp, AlignMode::kMerged);
  report.per_tag_alignment = Align(gold.spans, hyp, AlignMode::kPerTag);
  report.merged = MakeScore(gold.spans.size(), hyp.size(),
                            report.merged_alignment.matched.size());
  for (Tag tag : kTags) {
    size_t g = 0, h = 0, m = 0;
    for (const Span &s : gold.spans) g += s.tag == tag;
    for (const Span &s : hyp) h += s.tag == tag;
    for (const auto &pair : report.per_tag_alignment.matched) {
      m += gold.spans[pair.first].tag == tag;
    }
    report.per_tag[static_cast<size_t>(tag)] = MakeScore(g, h, m);
  }
  return report;
}

int RoundPercent(size_t num, size_t den) {
  if (den == 0) return 0;
  return static_cast<int>((200 * num + den) / (2 * den));
}

int ScorePercent(size_t matched, size_t den) {
  return den == 0 ? 100 : RoundPercent(matched, den);
}

TagDistribution Distribution(const GoldCorpus &gold) {
  TagDistribution d;
  d.total = gold.spans.size();
  for (const Span &s : gold.spans) ++d.counts[static_cast<size_t>(s.tag)];
  for (Tag tag : kTags) {
    size_t t = static_cast<size_t>(tag);
    d.percents[t] = RoundPercent(d.counts[t], d.total);
  }
  return d;
}

std::string FormatReport(const EvalReport &report, const GoldCorpus &gold,
                         const std::vector<Span> &hyp, ReportMode mode) {
  std::vector<std::string> header;
  std::vector<const Score *> columns;
  if (mode != ReportMode::kPerTag) {
    header.push_back("All");
    columns.push_back(&report.merged);
  }
  if (mode != ReportMode::kMerged) {
    for (Tag tag : kTags) {
      header.push_back(kColumnNames[static_cast<size_t>(tag)]);
      columns.push_back(&report.ForTag(tag));
    }
  }
  auto row = [&](const std::string &label, auto value) {
    std::string line = label;
    for (const Score *s : columns) line += "\t" + value(*s);
    return line + "\n";
  };
  std::string head;
  for (const std::string &h : header) head += "\t" + h;
  head += "\n";

  std::string out = "Comparison between parser output and manual annotation\n";
  out += head;
  out += row("Precision", [](const Score &s) {
    return std::to_string(ScorePercent(s.matched, s.hyp)) + "%";
  });
  out += row("Recall", [](const Score &s) {
    return std::to_string(ScorePercent(s.matched, s.gold)) + "%";
  });
  out += "\nCounts" + head;
  out += row("Reference", [](const Score &s) { return std::to_string(s.gold); });
  out += row("Parser", [](const Score &s) { return std::to_string(s.hyp); });
  out += row("Matched", [](const Score &s) { return std::to_string(s.matched); });

  const Alignment &a = ErrorAlignment(report, mode);
  out += "\nErrors\tReference\tParser\n";
  out += "tag_mismatch\t" + std::to_string(a.tag_mismatch.size()) + "\t" +
         std::to_string(a.tag_mismatch.size()) + "\n";
  out += "boundary_mismatch\t" + std::to_string(a.boundary_gold.size()) +
         "\t" + std::to_string(a.boundary_hyp.size()) + "\n";
  out += "missed\t" + std::to_string(a.missed.size()) + "\t0\n";
  out += "spurious\t0\t" + std::to_string(a.spurious.size()) + "\n";

  std::vector<ErrorItem> items = CollectErrors(a, gold.spans, hyp);
  if (!items.empty()) out += "\n";
  for (const ErrorItem &e : items) {
    out += e.kind + "\t" + e.side + "\t" + TagName(e.span.tag) + "\t" +
           std::to_string(e.span.start) + "\t" + std::to_string(e.span.end) +
           "\t" + Display(gold.raw, e.span) + "\n";
  }
  return out;
}

std::string FormatReportJson(const EvalReport &report, const GoldCorpus &gold,
                             const std::vector<Span> &hyp, ReportMode mode) {
  auto score_json = [](const Score &s) {
    return nlohmann::ordered_json{{"reference", s.gold},
                                  {"parser", s.hyp},
                                  {"matched", s.matched},
                                  {"precision", s.precision},
                                  {"recall", s.recall}};
  };
  nlohmann::ordered_json j;
  j["mode"] = mode == ReportMode::kMerged   ? "merged"
              : mode == ReportMode::kPerTag ? "pertag"
                                            : "both";
  if (mode != ReportMode::kPerTag) j["merged"] = score_json(report.merged);
  if (mode != ReportMode::kMerged) {
    for (Tag tag : kTags) j["per_tag"][TagName(tag)] = score_json(report.ForTag(tag));
  }
  j["errors"] = nlohmann::ordered_json::array();
  for (const ErrorItem &e :
       CollectErrors(ErrorAlignment(report, mode), gold.spans, hyp)) {
    j["errors"].push_back({{"kind", e.kind},
                           {"side", e.side},
                           {"tag", TagName(e.span.tag)},
                           {"start", e.span.start},
                           {"end", e.span.end},
                           {"text", Display(gold.raw, e.span)}});
  }
  return j.dump(2) + "\n";
}

std::string FormatDistribution(const TagDistribution &d) {
  std::string out = "Reference annotations\t" + std::to_string(d.total) + "\n";
  for (Tag tag : kTags) {
    size_t t = static_cast<size_t>(tag);
    out += std::string("<") + TagName(tag) + ">\t" +
           std::to_string(d.counts[t]) + "\t" + std::to_string(d.percents[t]) +
           "%\n";
  }
  return out;
}

}  // namespace detgram
