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

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "normcheck/frequency.hpp"
#include "normcheck/io.hpp"
#include "test_support.hpp"

namespace normcheck {
namespace {

using testing::q;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(NORMCHECK_SAMPLES_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kHeader =
    "input-alphabet: a b\n"
    "output-alphabet: a b\n"
    "initial: 1\n"
    "states: 1\n";

std::size_t error_line(const std::string& text) {
  try {
    parse_transducer(text);
  } catch (const LocatedError& e) {
    return e.line();
  }
  return 0;
}

TEST(ParseTransducer, RunningExampleSample) {
  const Transducer t = parse_transducer(slurp("running_example.nt"));
  EXPECT_EQ(t, testing::running_example());
  EXPECT_TRUE(validate(t).ok());
}

TEST(ParseTransducer, OtherSamples) {
  EXPECT_EQ(parse_transducer(slurp("identity.nt")), testing::identity_transducer());
  EXPECT_EQ(parse_transducer(slurp("b_delete.nt")), testing::b_deleting());
  EXPECT_EQ(parse_transducer(slurp("all_empty.nt")), testing::all_empty());
  EXPECT_TRUE(validate(parse_transducer(slurp("two_components.nt"))).ok());
}

TEST(ParseTransducer, UnknownStateCarriesLine) {
  const std::string text = std::string(kHeader) + "trans: 1 a a 1\ntrans: 1 a a 9\n";
  EXPECT_THROW(parse_transducer(text), UnknownState);
  EXPECT_EQ(error_line(text), 6u);
}

TEST(ParseTransducer, UnknownSymbols) {
  EXPECT_THROW(parse_transducer(std::string(kHeader) + "trans: 1 c a 1\n"), UnknownSymbol);
  EXPECT_THROW(parse_transducer(std::string(kHeader) + "trans: 1 a ac 1\n"), UnknownSymbol);
  EXPECT_EQ(error_line(std::string(kHeader) + "\n# note\ntrans: 1 a ac 1\n"), 7u);
}

TEST(ParseTransducer, Malformed) {
  EXPECT_THROW(parse_transducer(std::string(kHeader) + "trans: 1 a a\n"), ParseError);
  EXPECT_THROW(parse_transducer(std::string(kHeader) + "bogus: 1\n"), ParseError);
  EXPECT_THROW(parse_transducer(std::string(kHeader) + "initial: 1\n"), ParseError);
  EXPECT_THROW(parse_transducer(std::string(kHeader) + "trans: x a a 1\n"), ParseError);
  EXPECT_THROW(parse_transducer("input-alphabet: a\noutput-alphabet: a\nstates: 1\n"), ParseError);
  EXPECT_THROW(parse_transducer(std::string(kHeader) + "trans: 1 - a 1\n"), ParseError);
  EXPECT_THROW(parse_transducer("input-alphabet: a\noutput-alphabet: a\ninitial: 2\nstates: 1\n"),
               UnknownState);
}

TEST(ParseTransducer, EmptyOutputDash) {
  const Transducer t = parse_transducer(std::string(kHeader) + "trans: 1 a - 1\ntrans: 1 b b 1\n");
  EXPECT_EQ(t.transitions()[0].output, "");
}

TEST(RoundTrip, NormalizedRunningExample) {
  const Transducer n = normalize(testing::running_example());
  const std::string text = serialize_transducer(n);
  EXPECT_NE(text.find("parent: 4 2"), std::string::npos);
  EXPECT_EQ(parse_transducer(text), n);
}

TEST(RoundTrip, RandomTransducers) {
  std::mt19937 rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    const Transducer t =
        testing::random_transducer(rng, 1 + trial % 6, Alphabet("abc"), Alphabet("xy"), 3);
    EXPECT_EQ(parse_transducer(serialize_transducer(t)), t);
    const Transducer n = normalize(t);
    EXPECT_EQ(parse_transducer(serialize_transducer(n)), n);
  }
}

TEST(ParseWeighted, BinaryValueSample) {
  const WeightedAutomaton a = parse_weighted_automaton(slurp("binary_value.wa"));
  EXPECT_EQ(a, testing::binary_value());
  EXPECT_EQ(word_weight(a, "1010"), 10);
}

TEST(ParseWeighted, Errors) {
  EXPECT_THROW(parse_weighted_automaton("alphabet: a\nstate: 0 init 1/0\n"), ParseError);
  EXPECT_THROW(parse_weighted_automaton("alphabet: a\nstate: 0 init 1/-2\n"), NegativeDenominator);
  EXPECT_THROW(parse_weighted_automaton("alphabet: a\nstate: 0\ntrans: 0 a 1 3\n"), UnknownState);
  EXPECT_THROW(parse_weighted_automaton("alphabet: a\nstate: 0\ntrans: 0 b 1 0\n"), UnknownSymbol);
  EXPECT_THROW(parse_weighted_automaton("state: 0\n"), ParseError);
}

TEST(ParseWeighted, DefaultsAndRepeats) {
  const WeightedAutomaton a =
      parse_weighted_automaton("alphabet: a\nstate: 0\ntrans: 0 a 1/3 0\ntrans: 0 a 1/6 0\n");
  EXPECT_EQ(a.initial(), (RationalVector{q(0)}));
  EXPECT_EQ(a.final_weights(), (RationalVector{q(0)}));
  EXPECT_EQ(a.weight(0, 'a', 0), q(1, 2));
}

TEST(RoundTrip, RandomWeighted) {
  std::mt19937 rng(89);
  for (int trial = 0; trial < 60; ++trial) {
    const WeightedAutomaton a = testing::random_weighted(rng, 1 + trial % 5, Alphabet("xyz"));
    EXPECT_EQ(parse_weighted_automaton(serialize_weighted_automaton(a)), a);
  }
}

TEST(RoundTrip, FrequencyAutomaton) {
  const FrequencyAutomaton fa = build_frequency_automaton(testing::running_example());
  EXPECT_EQ(parse_weighted_automaton(serialize_weighted_automaton(fa.automaton)), fa.automaton);
}

TEST(MatrixDump, RunningExample) {
  const std::string dump = format_matrix_dump(build_frequency_automaton(testing::running_example()));
  EXPECT_NE(dump.find("# E ="), std::string::npos);
  EXPECT_NE(dump.find("# P ="), std::string::npos);
  EXPECT_NE(dump.find("# pi = 2/3 0 0 1/6 1/6"), std::string::npos);
  // Every dump line is a comment, so the document still parses.
  std::istringstream in(dump);
  for (std::string line; std::getline(in, line);) EXPECT_EQ(line.rfind('#', 0), 0u) << line;
}

}  // namespace
}  // namespace normcheck
