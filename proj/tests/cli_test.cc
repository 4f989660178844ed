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

#include <gtest/gtest.h>

#include <regex>

#include "detgram/matcher.h"
#include "support/process.h"
#include "support/test_data.h"

namespace detgram {
namespace {

using testing::DataPath;
using testing::Quote;
using testing::ReadData;
using testing::RunCli;
using testing::ScratchDir;
using testing::WriteFile;

std::string GrammarFlags() {
  return "--grammar " + Quote(DataPath("determiners.grm")) + " --rewrites " +
         Quote(DataPath("rewrites.txt")) + " --lexicon " +
         Quote(DataPath("lexicon.dic"));
}

TEST(CliTest, AnnotatesTheGoldenSentences) {
  auto r = RunCli("annotate " + GrammarFlags() + " " +
                  Quote(DataPath("golden/sentences.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, ReadData("golden/sentences.annotated.txt"));
  EXPECT_TRUE(std::regex_search(
      r.err, std::regex(R"(annotate: \d+ words, \d+ tokens, \d+ annotations)")));
}

TEST(CliTest, AnnotatesStandardInput) {
  auto r = RunCli("annotate " + GrammarFlags() + " -",
                  DataPath("golden/sentences.txt"));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, ReadData("golden/sentences.annotated.txt"));
}

TEST(CliTest, EmptyInputGivesEmptyOutput) {
  ScratchDir dir;
  WriteFile(dir / "empty.txt", "");
  auto r = RunCli("annotate " + GrammarFlags() + " " +
                  Quote((dir / "empty.txt").string()));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(CliTest, CompileWritesOneAutomatonPerMainGraph) {
  ScratchDir dir;
  auto r = RunCli("compile --grammar " + Quote(DataPath("determiners.grm")) +
                  " --out-dir " + Quote(dir.path().string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out,
            "Det\tstates 303\ttransitions 4028\n"
            "aDet\tstates 302\ttransitions 4024\n"
            "deDet\tstates 303\ttransitions 4025\n");
  for (const char *name : {"Det.fsa", "aDet.fsa", "deDet.fsa"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  EXPECT_NE(r.err.find("compile: "), std::string::npos);
}

TEST(CliTest, CompileDepthOneIsSmallerThanDepthFour) {
  ScratchDir dir;
  auto states = [&](int depth) {
    auto r = RunCli("compile --grammar " + Quote(DataPath("determiners.grm")) +
                    " --depth " + std::to_string(depth) + " --out-dir " +
                    Quote(dir.path().string()));
    EXPECT_EQ(r.exit_code, 0);
    std::smatch m;
    std::regex_search(r.out, m, std::regex(R"(^Det\tstates (\d+))"));
    return std::stoi(m[1]);
  };
  EXPECT_LE(states(1), states(4));
}

TEST(CliTest, EvaluateReferenceAgainstItself) {
  std::string ref = Quote(DataPath("corpus/reference.txt"));
  auto r = RunCli("evaluate " + ref + " " + ref);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("Precision\t100%\t100%\t100%\t100%"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("Recall\t100%\t100%\t100%\t100%"), std::string::npos);
}

TEST(CliTest, EvaluateRunReproducesTheExpectedReport) {
  auto r = RunCli("evaluate " + GrammarFlags() + " --run " +
                  Quote(DataPath("corpus/reference.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, ReadData("corpus/expected_report.txt"));
}

TEST(CliTest, EvaluateRunEqualsAnnotateThenEvaluate) {
  ScratchDir dir;
  WriteFile(dir / "raw.txt",
            StripTags(ReadData("corpus/reference.txt")));
  auto annotated = RunCli("annotate " + GrammarFlags() + " " +
                          Quote((dir / "raw.txt").string()));
  ASSERT_EQ(annotated.exit_code, 0);
  WriteFile(dir / "hyp.txt", annotated.out);
  auto piped = RunCli("evaluate " + Quote(DataPath("corpus/reference.txt")) +
                      " " + Quote((dir / "hyp.txt").string()));
  EXPECT_EQ(piped.out, ReadData("corpus/expected_report.txt"));
}

TEST(CliTest, EvaluateJson) {
  std::string ref = Quote(DataPath("corpus/reference.txt"));
  auto r = RunCli("evaluate --json --mode merged " + ref + " " +
                  Quote(DataPath("corpus/hypothesis.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("\"mode\": \"merged\""), std::string::npos);
}

TEST(CliTest, StatsPrintsGrammarAndCorpusCounts) {
  auto r = RunCli("stats --grammar " + Quote(DataPath("determiners.grm")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("graphs\t14"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("transitions\t127"), std::string::npos);
  EXPECT_NE(r.out.find("literals\t66"), std::string::npos);
  EXPECT_EQ(r.out.find("Reference annotations"), std::string::npos);

  r = RunCli("stats --grammar " + Quote(DataPath("determiners.grm")) + " " +
             Quote(DataPath("corpus/reference.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("Reference annotations\t72\n<d>\t53\t74%\n"
                       "<ad>\t6\t8%\n<dd>\t13\t18%\n"),
            std::string::npos)
      << r.out;
}

TEST(CliTest, ExitCodes) {
  ScratchDir dir;
  WriteFile(dir / "empty.grm", "");
  WriteFile(dir / "dead.grm",
            "graph A @main\n nodes 3\n final 1\n 0 x 1\n 0 y 2\n");
  WriteFile(dir / "nested.txt", "<d>un <d>deux</d></d>\n");
  WriteFile(dir / "other.txt", "autre texte\n");

  EXPECT_EQ(RunCli("").exit_code, 1);
  EXPECT_EQ(RunCli("frobnicate").exit_code, 1);
  EXPECT_EQ(RunCli("compile").exit_code, 1);
  EXPECT_EQ(RunCli("compile --grammar " + Quote(DataPath("determiners.grm")) +
                   " --depth 0")
                .exit_code,
            1);
  EXPECT_EQ(RunCli("compile --grammar " + Quote((dir / "empty.grm").string()))
                .exit_code,
            2);
  auto dead =
      RunCli("compile --grammar " + Quote((dir / "dead.grm").string()));
  EXPECT_EQ(dead.exit_code, 3);
  EXPECT_NE(dead.err.find("dead-node"), std::string::npos);
  EXPECT_EQ(RunCli("evaluate " + Quote((dir / "nested.txt").string()) + " " +
                   Quote((dir / "nested.txt").string()))
                .exit_code,
            2);
  auto mismatch = RunCli("evaluate " + Quote(DataPath("corpus/reference.txt")) +
                         " " + Quote((dir / "other.txt").string()));
  EXPECT_EQ(mismatch.exit_code, 2);
  EXPECT_NE(mismatch.err.find("offset 0"), std::string::npos) << mismatch.err;
  EXPECT_EQ(RunCli("annotate " + GrammarFlags() + " " +
                   Quote((dir / "missing.txt").string()))
                .exit_code,
            2);
}

TEST(CliTest, ConfigFileSuppliesOptions) {
  ScratchDir dir;
  WriteFile(dir / "run.toml", "[annotate]\ngrammar = \"" +
                                  DataPath("determiners.grm") +
                                  "\"\nrewrites = \"" +
                                  DataPath("rewrites.txt") + "\"\nlexicon = \"" +
                                  DataPath("lexicon.dic") + "\"\n");
  auto r = RunCli("--config " + Quote((dir / "run.toml").string()) +
                  " annotate " + Quote(DataPath("golden/sentences.txt")));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, ReadData("golden/sentences.annotated.txt"));
}

}  // namespace
}  // namespace detgram
