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

// Match enumeration over a synthetic text: the serial reference against the
// OpenMP kernel, and the whole annotation pipeline.

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "detgram/grammar.h"
#include "detgram/lexicon.h"
#include "detgram/mask.h"
#include "detgram/matcher.h"
#include "detgram/rewrite.h"

namespace detgram {
namespace {

std::string ReadData(const std::string &name) {
  std::ifstream in(std::string(DETGRAM_DATA_DIR) + "/" + name,
                   std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Fixture {
  Fixture()
      : grammar(Surfaceize(ParseGrammar(ReadData("determiners.grm")),
                           ParseRewriteTable(ReadData("rewrites.txt")))
                    .grammar),
        lexicon(ParseLexicon(ReadData("lexicon.dic"))),
        rtn(grammar) {
    std::string base = StripTags(ReadData("corpus/reference.txt"));
    while (text.size() < 200000) text += base;
  }

  // The first `bytes` of the text, cut at a line break.
  std::string Prefix(size_t bytes) const {
    size_t cut = text.find('\n', std::min(bytes, text.size() - 1));
    return text.substr(0, cut == std::string::npos ? text.size() : cut + 1);
  }

  GrammarSet grammar;
  Lexicon lexicon;
  RtnInterpreter rtn;
  std::string text;
};

const Fixture &GetFixture() {
  static const Fixture *fixture = new Fixture();
  return *fixture;
}

template <MatchSet (*Enumerate)(const RtnInterpreter &, const AnalyzedText &)>
void BM_Enumerate(benchmark::State &state) {
  const Fixture &f = GetFixture();
  AnalyzedText text = Analyze(f.Prefix(state.range(0)), f.lexicon);
  size_t matches = 0;
  for (auto _ : state) {
    MatchSet m = Enumerate(f.rtn, text);
    matches = m.size();
    benchmark::DoNotOptimize(m.data());
  }
  state.counters["tokens"] = static_cast<double>(text.size());
  state.counters["matches"] = static_cast<double>(matches);
  state.SetItemsProcessed(state.iterations() * text.size());
}

BENCHMARK(BM_Enumerate<EnumerateMatchesSerial>)
    ->Name("EnumerateSerial")
    ->Arg(20000)
    ->Arg(200000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate<EnumerateMatches>)
    ->Name("EnumerateOpenMP")
    ->Arg(20000)
    ->Arg(200000)
    ->Unit(benchmark::kMillisecond);

void BM_Annotate(benchmark::State &state) {
  const Fixture &f = GetFixture();
  AnnotatorOptions options;
  options.parallel = state.range(0) != 0;
  Annotator annotator(f.grammar, f.lexicon, options);
  std::string raw = f.Prefix(200000);
  size_t words = 0;
  for (auto _ : state) {
    AnnotationResult r = annotator.Annotate(raw);
    words = r.words;
    benchmark::DoNotOptimize(r.text.data());
  }
  state.counters["words/s"] = benchmark::Counter(
      static_cast<double>(words) * state.iterations(),
      benchmark::Counter::kIsRate);
}

BENCHMARK(BM_Annotate)->Name("Annotate")->ArgName("parallel")->Arg(0)->Arg(1)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace detgram

BENCHMARK_MAIN();
