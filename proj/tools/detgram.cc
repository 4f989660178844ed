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

// Command-line front end:
//
//   detgram compile  --grammar G [--rewrites R] [--depth N] [--out-dir D]
//   detgram annotate --grammar G --lexicon L [--rewrites R] INPUT
//   detgram evaluate REFERENCE [HYPOTHESIS | --run --grammar G --lexicon L]
//   detgram stats    --grammar G [CORPUS]
//
// Exit status: 0 success, 1 usage error, 2 unreadable or malformed input,
// 3 grammar validation failure. Timing lines go to standard error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "detgram/compiler.h"
#include "detgram/errors.h"
#include "detgram/evaluator.h"
#include "detgram/grammar.h"
#include "detgram/lexicon.h"
#include "detgram/matcher.h"
#include "detgram/rewrite.h"

namespace detgram {
namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitValidation = 3;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string grammar;
  std::string lexicon;
  std::string rewrites;
  int depth = kDefaultDepthBound;
  bool no_guard = false;
  bool no_surfaceize = false;
  std::string mode = "both";
  bool json = false;
  std::string out_dir = ".";
  bool run = false;
  std::string input;
  std::string reference;
  std::string hypothesis;
  std::string corpus;
};

std::string ReadFile(const std::string &path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw InputError("error reading " + path);
  return buffer.str();
}

void WriteFile(const std::filesystem::path &path, const std::string &data) {
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) throw InputError("cannot write " + path.string());
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

// Parses, validates and, when a rewrite table is configured, surfaceizes
// the grammar. Diagnostics go to standard error.
GrammarSet LoadGrammar(const Config &config) {
  GrammarSet grammar = ParseGrammar(ReadFile(config.grammar));
  std::vector<Diagnostic> diagnostics = Validate(grammar);
  for (const Diagnostic &d : diagnostics) std::cerr << d.ToString() << "\n";
  if (HasErrors(diagnostics)) {
    throw ValidationError(config.grammar + ": grammar is invalid");
  }
  if (config.rewrites.empty() || config.no_surfaceize) return grammar;
  SurfaceResult surface =
      Surfaceize(grammar, ParseRewriteTable(ReadFile(config.rewrites)));
  for (const Diagnostic &d : surface.diagnostics) {
    std::cerr << d.ToString() << "\n";
  }
  return std::move(surface.grammar);
}

Lexicon LoadLexicon(const Config &config) {
  return Lexicon(ParseLexicon(ReadFile(config.lexicon)));
}

AnnotatorOptions MakeOptions(const Config &config) {
  AnnotatorOptions options;
  options.depth_bound = config.depth;
  options.np_guard = !config.no_guard;
  return options;
}

ReportMode ParseMode(const std::string &mode) {
  if (mode == "merged") return ReportMode::kMerged;
  if (mode == "pertag") return ReportMode::kPerTag;
  return ReportMode::kBoth;
}

int RunCompile(const Config &config) {
  auto begin = std::chrono::steady_clock::now();
  GrammarSet grammar = LoadGrammar(config);
  std::filesystem::create_directories(config.out_dir);
  for (const std::string &main : grammar.mains()) {
    Fsa fsa = Flatten(grammar, main, config.depth);
    FsaCounts counts = CountStates(fsa);
    WriteFile(std::filesystem::path(config.out_dir) / (main + ".fsa"),
              SerializeFsa(fsa));
    std::cout << main << "\tstates " << counts.states << "\ttransitions "
              << counts.transitions << "\n";
  }
  std::fprintf(stderr, "compile: %.3f s\n", Seconds(begin));
  return 0;
}

int RunAnnotate(const Config &config) {
  std::string input = ReadFile(config.input);
  auto begin = std::chrono::steady_clock::now();
  GrammarSet grammar = LoadGrammar(config);
  Lexicon lexicon = LoadLexicon(config);
  Annotator annotator(grammar, lexicon, MakeOptions(config));
  double load = Seconds(begin);

  auto start = std::chrono::steady_clock::now();
  AnnotationResult result = annotator.Annotate(input);
  double elapsed = Seconds(start);
  std::cout << result.text;
  std::cout.flush();

  double rate = elapsed > 0 ? result.words / elapsed : 0.0;
  double token_rate = elapsed > 0 ? result.tokens / elapsed : 0.0;
  std::fprintf(stderr,
               "annotate: %zu words, %zu tokens, %zu annotations in %.3f s "
               "(%.0f words/s, %.0f tokens/s; setup %.3f s)\n",
               result.words, result.tokens, result.annotations.size(), elapsed,
               rate, token_rate, load);
  return 0;
}

int RunEvaluate(const Config &config) {
  GoldCorpus gold = ParseAnnotated(ReadFile(config.reference));
  std::vector<Span> hyp;
  if (config.run) {
    if (config.grammar.empty() || config.lexicon.empty()) {
      throw CLI::ValidationError("--run", "needs --grammar and --lexicon");
    }
    GrammarSet grammar = LoadGrammar(config);
    Lexicon lexicon = LoadLexicon(config);
    Annotator annotator(grammar, lexicon, MakeOptions(config));
    // Exactly annotate followed by scoring: the annotated text is parsed
    // back like a hypothesis file would be.
    GoldCorpus parsed = ParseAnnotated(annotator.Annotate(gold.raw).text);
    CheckSameText(gold.raw, parsed.raw);
    hyp = parsed.spans;
  } else {
    if (config.hypothesis.empty()) {
      throw CLI::ValidationError("HYPOTHESIS", "give a file or --run");
    }
    GoldCorpus parsed = ParseAnnotated(ReadFile(config.hypothesis));
    CheckSameText(gold.raw, parsed.raw);
    hyp = parsed.spans;
  }
  EvalReport report = Evaluate(gold, hyp);
  ReportMode mode = ParseMode(config.mode);
  std::cout << (config.json ? FormatReportJson(report, gold, hyp, mode)
                            : FormatReport(report, gold, hyp, mode));
  return 0;
}

int RunStats(const Config &config) {
  GrammarSet grammar = ParseGrammar(ReadFile(config.grammar));
  GrammarStats stats = Stats(grammar);
  std::cout << "graphs\t" << stats.graphs << "\n";
  std::cout << "transitions\t" << stats.transitions << "\n";
  std::cout << "literals\t" << stats.distinct_literals << "\n";
  std::cout << "mains";
  for (const std::string &m : stats.mains) std::cout << "\t" << m;
  std::cout << "\n";
  if (!config.corpus.empty()) {
    std::cout << FormatDistribution(
        Distribution(ParseAnnotated(ReadFile(config.corpus))));
  }
  return 0;
}

void AddGrammarOptions(CLI::App *cmd, Config *config, bool need_lexicon) {
  cmd->add_option("--grammar", config->grammar, "Grammar file")
      ->check(CLI::ExistingFile);
  auto *lexicon = cmd->add_option("--lexicon", config->lexicon,
                                  "Dictionary file")
                      ->check(CLI::ExistingFile);
  if (need_lexicon) lexicon->required();
  cmd->add_option("--rewrites", config->rewrites,
                  "Rewrite table; the grammar is surfaceized with it")
      ->check(CLI::ExistingFile);
  cmd->add_option("--depth", config->depth, "Call depth bound")
      ->check(CLI::Range(1, 1 << 20));
  cmd->add_flag("--no-guard", config->no_guard,
                "Keep matches not followed by a noun phrase");
  cmd->add_flag("--no-surfaceize", config->no_surfaceize,
                "Use the grammar as written even with --rewrites");
}

int Main(int argc, char **argv) {
  CLI::App app{"Local-grammar annotation of French determiners"};
  app.set_config("--config", "", "TOML or INI file with option values");
  app.require_subcommand(1);
  Config config;

  CLI::App *compile = app.add_subcommand("compile", "Flatten main graphs");
  AddGrammarOptions(compile, &config, false);
  compile->get_option("--grammar")->required();
  compile->add_option("--out-dir", config.out_dir, "Directory for .fsa files");

  CLI::App *annotate = app.add_subcommand("annotate", "Tag determiners");
  AddGrammarOptions(annotate, &config, true);
  annotate->get_option("--grammar")->required();
  annotate->add_option("input", config.input, "Raw text file ('-' for stdin)")
      ->required();

  CLI::App *evaluate =
      app.add_subcommand("evaluate", "Score against a reference");
  AddGrammarOptions(evaluate, &config, false);
  evaluate->add_option("reference", config.reference, "Annotated reference")
      ->required();
  evaluate->add_option("hypothesis", config.hypothesis, "Annotated output");
  evaluate->add_flag("--run", config.run,
                     "Annotate the stripped reference instead");
  evaluate->add_option("--mode", config.mode, "Columns to report")
      ->check(CLI::IsMember({"merged", "pertag", "both"}));
  evaluate->add_flag("--json", config.json, "Machine-readable report");

  CLI::App *stats = app.add_subcommand("stats", "Grammar and corpus counts");
  stats->add_option("--grammar", config.grammar, "Grammar file")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_option("corpus", config.corpus, "Annotated corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*compile) return RunCompile(config);
    if (*annotate) return RunAnnotate(config);
    if (*evaluate) return RunEvaluate(config);
    return RunStats(config);
  } catch (const CLI::Error &e) {
    std::cerr << "detgram: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError &e) {
    std::cerr << "detgram: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception &e) {
    // Parse, format, IO and lookup failures.
    std::cerr << "detgram: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace
}  // namespace detgram

int main(int argc, char **argv) { return detgram::Main(argc, argv); }
