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

#ifndef DETGRAM_EVALUATOR_H_
#define DETGRAM_EVALUATOR_H_

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detgram/matcher.h"

namespace detgram {

// A tagged byte interval [start, end) over raw text.
struct Span {
  Tag tag = Tag::kD;
  size_t start = 0;
  size_t end = 0;

  bool operator==(const Span &other) const = default;
};

struct GoldCorpus {
  std::string raw;
  std::vector<Span> spans;  // in text order, non-overlapping

  bool operator==(const GoldCorpus &other) const = default;
};

// Reads text annotated with <d>, <ad> and <dd>. Anything shaped like a tag
// ("<name>" or "</name>" with an ASCII letter name) must be one of those.
// Throws FormatError with the offending offset for unknown tags, unbalanced
// or nested tags and empty spans.
GoldCorpus ParseAnnotated(std::string_view text);

// Inverse of ParseAnnotated.
std::string SerializeAnnotated(const GoldCorpus &corpus);

std::vector<Span> SpansOf(const std::vector<Annotation> &annotations);

// Throws FormatError at the first byte where the two texts differ.
void CheckSameText(std::string_view reference, std::string_view hypothesis);

enum class AlignMode { kMerged, kPerTag };

// A partition of both span lists. Spans with equal boundaries are matched
// (per-tag mode also needs equal tags, otherwise they are a tag mismatch).
// Remaining spans that overlap a remaining span of the other side are
// boundary mismatches; the rest are missed (reference) or spurious
// (hypothesis). Indices refer to the input lists.
struct Alignment {
  std::vector<std::pair<size_t, size_t>> matched;       // (gold, hyp)
  std::vector<std::pair<size_t, size_t>> tag_mismatch;  // (gold, hyp)
  std::vector<size_t> boundary_gold;
  std::vector<size_t> boundary_hyp;
  std::vector<size_t> missed;
  std::vector<size_t> spurious;
};

Alignment Align(const std::vector<Span> &gold, const std::vector<Span> &hyp,
                AlignMode mode);

struct Score {
  size_t gold = 0;
  size_t hyp = 0;
  size_t matched = 0;
  double precision = 1.0;  // 1 when hyp == 0
  double recall = 1.0;     // 1 when gold == 0

  bool operator==(const Score &other) const = default;
};

Score MakeScore(size_t gold, size_t hyp, size_t matched);

struct ErrorItem {
  std::string kind;  // tag_mismatch, boundary_mismatch, missed, spurious
  std::string side;  // reference or parser
  Span span;
};

struct EvalReport {
  Score merged;
  std::array<Score, 3> per_tag;  // indexed by Tag
  Alignment merged_alignment;
  Alignment per_tag_alignment;

  const Score &ForTag(Tag tag) const {
    return per_tag[static_cast<size_t>(tag)];
  }
};

// Throws std::invalid_argument when a hypothesis span exceeds the text.
EvalReport Evaluate(const GoldCorpus &gold, const std::vector<Span> &hyp);

// Integer percentage rounded half up; 0 when den == 0.
int RoundPercent(size_t num, size_t den);
// Precision or recall as a rounded percentage (100 for an empty side).
int ScorePercent(size_t matched, size_t den);

struct TagDistribution {
  size_t total = 0;
  std::array<size_t, 3> counts = {};   // indexed by Tag
  std::array<int, 3> percents = {};    // rounded, 0 for an empty corpus
};

TagDistribution Distribution(const GoldCorpus &gold);

enum class ReportMode { kMerged, kPerTag, kBoth };

// Plain-text report: the precision/recall table (All, Det, aDet, deDet),
// counts, an error summary and one line per error. Errors come from the
// per-tag alignment except in merged mode.
std::string FormatReport(const EvalReport &report, const GoldCorpus &gold,
                         const std::vector<Span> &hyp, ReportMode mode);
std::string FormatReportJson(const EvalReport &report, const GoldCorpus &gold,
                             const std::vector<Span> &hyp, ReportMode mode);

std::string FormatDistribution(const TagDistribution &distribution);

}  // namespace detgram

#endif  // DETGRAM_EVALUATOR_H_
