// Copyright 2026 The normcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "normcheck/cli.hpp"
#include "normcheck/io.hpp"

namespace normcheck {
namespace {

std::string sample(const std::string& name) { return std::string(NORMCHECK_SAMPLES_DIR) + "/" + name; }

struct Outcome {
  int code = -1;
  std::string out;
};

// Runs the built binary with `args`, capturing stdout.
Outcome invoke(const std::string& args) {
  const std::string command = std::string(NORMCHECK_CLI) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("normcheck_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

TEST(CmdCheck, RunningExamplePreserves) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check(sample("running_example.nt"), out, err), cli::kOk);
  EXPECT_NE(out.str().find("preserving"), std::string::npos);
  EXPECT_TRUE(err.str().empty());
}

TEST(CmdCheck, BDeletingFails) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check(sample("b_delete.nt"), out, err), cli::kNegative);
  EXPECT_NE(out.str().find("witness: b\n"), std::string::npos);
}

TEST(CmdCheck, Timing) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check(sample("running_example.nt"), out, err, true), cli::kOk);
  EXPECT_NE(out.str().find("# size: 11\n"), std::string::npos);
  EXPECT_NE(out.str().find("# time-ms: "), std::string::npos);
}

TEST(CmdCheck, InvalidInputs) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_check("/nonexistent/file.nt", out, err), cli::kInvalid);
  EXPECT_NE(err.str().find("error: "), std::string::npos);
  const std::string incomplete = temp_file(
      "incomplete.nt", "input-alphabet: a b\noutput-alphabet: a\ninitial: 1\nstates: 1\ntrans: 1 a a 1\n");
  EXPECT_EQ(cli::cmd_check(incomplete, out, err), cli::kInvalid);
  const std::string bad_line = temp_file(
      "bad.nt", "input-alphabet: a\noutput-alphabet: a\ninitial: 1\nstates: 1\ntrans: 1 a a 9\n");
  std::ostringstream err2;
  EXPECT_EQ(cli::cmd_check(bad_line, out, err2), cli::kInvalid);
  EXPECT_NE(err2.str().find("line 5"), std::string::npos);
}

TEST(CmdFreq, RunningExample) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_freq(sample("running_example.nt"), "ab", out, err), cli::kOk);
  EXPECT_EQ(out.str(), "1/4\n");
}

TEST(CmdFreq, EmptyWordAndBadSymbol) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_freq(sample("b_delete.nt"), "", out, err), cli::kOk);
  EXPECT_EQ(out.str(), "1\n");
  EXPECT_EQ(cli::cmd_freq(sample("running_example.nt"), "abc", out, err), cli::kInvalid);
}

TEST(CmdFreq, PerComponent) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_freq(sample("two_components.nt"), "b", out, err), cli::kOk);
  EXPECT_EQ(out.str(), "component 1: 1/2\ncomponent 2: 0\n");
}

TEST(CmdFreq, AllEmptyIsUndefined) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_freq(sample("all_empty.nt"), "a", out, err), cli::kInvalid);
  EXPECT_NE(out.str().find("undefined"), std::string::npos);
}

TEST(CmdBuild, RunningExampleReproducesWeights) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_build(sample("running_example.nt"), out, err), cli::kOk);
  const std::string text = out.str();
  EXPECT_NE(text.find("# pi = 2/3 0 0 1/6 1/6"), std::string::npos);
  for (const char* line : {"trans: 1 a 1/2 1", "trans: 1 b 1/4 4", "trans: 1 b 1/4 5",
                           "trans: 2 b 1/2 4", "trans: 2 b 1/2 5", "trans: 3 b 1 5",
                           "trans: 4 b 1 1", "trans: 5 a 1 1"})
    EXPECT_NE(text.find(std::string(line) + "\n"), std::string::npos) << line;
  // The document part parses back to the automaton.
  const WeightedAutomaton a = parse_weighted_automaton(text);
  EXPECT_EQ(word_weight(a, "ab"), make_rational(1, 4));
  EXPECT_EQ(a.transitions().size(), 8u);
}

TEST(CmdRun, Champernowne) {
  std::ostringstream out, err;
  // Input abbabbbaabab.
  EXPECT_EQ(cli::cmd_run(sample("identity.nt"), "champernowne:2", 12, out, err), cli::kOk);
  EXPECT_EQ(out.str(), "abbabbbaabab\n");
  std::ostringstream out2;
  EXPECT_EQ(cli::cmd_run(sample("running_example.nt"), "champernowne:2", 4, out2, err), cli::kOk);
  EXPECT_EQ(out2.str(), "abba\n");
}

TEST(CmdRun, FileSource) {
  const std::string input = temp_file("input.txt", "ab ba\n");
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_run(sample("running_example.nt"), "file:" + input, 4, out, err), cli::kOk);
  EXPECT_EQ(out.str(), "abba\n");
  EXPECT_EQ(cli::cmd_run(sample("running_example.nt"), "file:" + input, 5, out, err), cli::kInvalid);
}

TEST(CmdRun, BadSources) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_run(sample("running_example.nt"), "champernowne:3", 4, out, err), cli::kInvalid);
  EXPECT_EQ(cli::cmd_run(sample("running_example.nt"), "random", 4, out, err), cli::kInvalid);
  EXPECT_EQ(cli::cmd_run(sample("running_example.nt"), "file:/nonexistent", 4, out, err), cli::kInvalid);
}

TEST(CmdSimulate, ToleranceDecidesExitCode) {
  cli::SimulateOptions opts;
  opts.n = 100'000;
  opts.max_len = 2;
  opts.tolerance = 0.2;
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_simulate(sample("identity.nt"), "champernowne:2", opts, out, err), cli::kOk);
  EXPECT_NE(out.str().find("max gap: "), std::string::npos);
  opts.tolerance = 0.001;
  EXPECT_EQ(cli::cmd_simulate(sample("identity.nt"), "champernowne:2", opts, out, err), cli::kNegative);
}

TEST(CmdSimulate, Csv) {
  cli::SimulateOptions opts;
  opts.n = 10'000;
  opts.max_len = 1;
  opts.tolerance = 1;
  opts.csv = true;
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_simulate(sample("b_delete.nt"), "champernowne:2", opts, out, err), cli::kOk);
  EXPECT_EQ(out.str(), "word,predicted,empirical,gap\na,1,1.000000,0.000000\nb,0,0.000000,0.000000\n");
}

TEST(CmdSimulate, TooShort) {
  cli::SimulateOptions opts;
  opts.n = 50;
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_simulate(sample("running_example.nt"), "champernowne:2", opts, out, err), cli::kInvalid);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(invoke("check " + sample("running_example.nt")).code, 0);
  EXPECT_EQ(invoke("check " + sample("identity.nt")).code, 0);
  EXPECT_EQ(invoke("check " + sample("b_delete.nt")).code, 1);
  EXPECT_EQ(invoke("check " + sample("all_empty.nt")).code, 1);
  EXPECT_EQ(invoke("check " + sample("two_components.nt")).code, 1);
  EXPECT_EQ(invoke("check /nonexistent").code, 2);
  EXPECT_EQ(invoke("").code, 2);
  EXPECT_EQ(invoke("frobnicate").code, 2);
  EXPECT_EQ(invoke("check").code, 2);
  EXPECT_EQ(invoke("--help").code, 0);
}

TEST(Binary, Outputs) {
  EXPECT_EQ(invoke("freq " + sample("running_example.nt") + " ab").out, "1/4\n");
  EXPECT_NE(invoke("check " + sample("b_delete.nt")).out.find("witness: b"), std::string::npos);
  EXPECT_EQ(invoke("run " + sample("running_example.nt") + " champernowne:2 4").out, "abba\n");
  const Outcome sim = invoke("simulate " + sample("b_delete.nt") + " champernowne:2 10000 1 --csv");
  EXPECT_EQ(sim.code, 0);
  EXPECT_EQ(sim.out.substr(0, 28), "word,predicted,empirical,gap");
}

}  // namespace
}  // namespace normcheck
