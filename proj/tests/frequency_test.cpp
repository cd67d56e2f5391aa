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

#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "normcheck/frequency.hpp"
#include "test_support.hpp"

namespace normcheck {
namespace {

using testing::q;
using testing::tr;

TEST(WeighTransitions, NormalizedRunningExample) {
  const WeightedTransducer wt = weigh_transitions(normalize(testing::running_example()));
  ASSERT_EQ(wt.weights.size(), 8u);
  for (std::size_t i = 0; i < wt.weights.size(); ++i)
    EXPECT_EQ(wt.weights[i], wt.base.transitions()[i].epsilon() ? q(1) : q(1, 2));
}

TEST(WeighTransitions, RejectsIncomplete) {
  const Transducer t({1}, Alphabet("ab"), Alphabet("ab"), {tr(1, 'a', "a", 1)}, 1);
  EXPECT_THROW(weigh_transitions(t), InvalidTransducer);
}

TEST(Matrices, NormalizedRunningExample) {
  const WeightedTransducer wt = weigh_transitions(normalize(testing::running_example()));
  EXPECT_EQ(empty_output_matrix(wt), testing::worked_e());
  EXPECT_EQ(output_matrix(wt, 'a'), testing::worked_n_a());
  EXPECT_EQ(output_matrix(wt, 'b'), testing::worked_n_b());
  EXPECT_THROW(output_matrix(wt, 'c'), UnknownSymbol);
}

TEST(FrequencyAutomaton, RunningExample) {
  const FrequencyAutomaton fa = build_frequency_automaton(testing::running_example());
  EXPECT_EQ(fa.normalized.states(), (std::vector<State>{1, 2, 3, 4, 5}));
  EXPECT_EQ(fa.e, testing::worked_e());
  EXPECT_EQ(fa.e_star, testing::worked_e_star());
  EXPECT_EQ(fa.automaton.matrix('a'), testing::worked_e_star() * testing::worked_n_a());
  EXPECT_EQ(fa.automaton.matrix('b'), testing::worked_e_star() * testing::worked_n_b());
  EXPECT_EQ(fa.p, testing::worked_p());
  EXPECT_EQ(fa.pi, testing::worked_pi());
  EXPECT_EQ(fa.automaton.initial(), testing::worked_pi());
  EXPECT_EQ(fa.automaton.final_weights(), RationalVector(5, q(1)));
  // A few entries read off directly.
  EXPECT_EQ(fa.automaton.weight(1, 'a', 1), q(1, 2));
  EXPECT_EQ(fa.automaton.weight(2, 'b', 4), q(1, 2));
  EXPECT_EQ(fa.automaton.weight(3, 'b', 5), 1);
  EXPECT_EQ(fa.automaton.weight(5, 'a', 1), 1);
}

TEST(FrequencyAutomaton, RunningExampleWeightsAreUniform) {
  const FrequencyAutomaton fa = build_frequency_automaton(testing::running_example());
  for (const Word& w : words_up_to(Alphabet("ab"), 8))
    EXPECT_EQ(word_weight(fa.automaton, w), testing::uniform_weight(2, w.size())) << w;
}

TEST(FrequencyAutomaton, IdentityIsUniform) {
  const FrequencyAutomaton fa = build_frequency_automaton(testing::identity_transducer());
  EXPECT_TRUE(equivalent(fa.automaton, uniform_automaton(Alphabet("ab"))));
}

TEST(FrequencyAutomaton, BDeleting) {
  const FrequencyAutomaton fa = build_frequency_automaton(testing::b_deleting());
  EXPECT_EQ(word_weight(fa.automaton, "a"), 1);
  EXPECT_EQ(word_weight(fa.automaton, "b"), 0);
  EXPECT_EQ(word_weight(fa.automaton, "aaa"), 1);
}

TEST(FrequencyAutomaton, Errors) {
  EXPECT_THROW(build_frequency_automaton(testing::all_empty()), AllOutputsEmpty);
  const Transducer chain({1, 2}, Alphabet("ab"), Alphabet("ab"),
                         {tr(1, 'a', "a", 2), tr(1, 'b', "b", 2), tr(2, 'a', "a", 2), tr(2, 'b', "b", 2)},
                         1);
  EXPECT_THROW(build_frequency_automaton(chain), InvalidTransducer);
  EXPECT_THROW(build_frequency_automaton(normalize(testing::running_example())), InvalidTransducer);
}

// One-state machines whose outputs have length <= 1 emit i.i.d. symbols
// (empties dropped), so freq(w) = prod c(w_i) / c where c(b) counts inputs
// mapped to b and c counts inputs with non-empty output.
TEST(FrequencyAutomaton, MatchesIidOracleOnOneStateMachines) {
  std::mt19937 rng(43);
  const Alphabet in("abcd"), out("xyz");
  for (int trial = 0; trial < 40; ++trial) {
    const Transducer t = testing::random_transducer(rng, 1, in, out, 1);
    std::map<char, long> count;
    long total = 0;
    for (const auto& x : t.transitions())
      if (!x.output.empty()) {
        ++count[x.output[0]];
        ++total;
      }
    const FrequencyAutomaton fa = build_frequency_automaton(t);
    for (const Word& w : words_up_to(out, 3)) {
      Rational expected = 1;
      for (char b : w) expected *= make_rational(count[b], total);
      EXPECT_EQ(word_weight(fa.automaton, w), expected) << w;
    }
  }
}

TEST(FrequencyAutomaton, BlockWeightsSumToOne) {
  std::mt19937 rng(47);
  const Alphabet ab("ab");
  int built = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Transducer t = testing::random_strongly_connected(rng, 1 + trial % 4, ab, ab, 2);
    FrequencyAutomaton fa;
    try {
      fa = build_frequency_automaton(t);
    } catch (const DivergentStar&) {
      continue;
    } catch (const NonUniqueStationary&) {
      continue;
    }
    ++built;
    std::map<std::size_t, Rational> sums;
    for (const Word& w : words_up_to(ab, 4)) sums[w.size()] += word_weight(fa.automaton, w);
    for (const auto& [len, s] : sums) EXPECT_EQ(s, 1) << "length " << len;
    for (const auto& x : fa.pi) EXPECT_GE(x, 0);
  }
  EXPECT_GT(built, 20);
}

Transducer relabel(const Transducer& t, const std::map<State, State>& to) {
  std::vector<State> states;
  for (State s : t.states()) states.push_back(to.at(s));
  std::vector<Transition> ts;
  for (const auto& x : t.transitions()) ts.push_back(Transition{to.at(x.source), x.input, x.output, to.at(x.target)});
  return Transducer(states, t.input_alphabet(), t.output_alphabet(), ts, to.at(t.initial()));
}

TEST(FrequencyAutomaton, InvariantUnderRelabeling) {
  std::mt19937 rng(53);
  const Alphabet ab("ab");
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const Transducer t = testing::random_strongly_connected(rng, n, ab, ab, 2);
    std::vector<State> ids(n);
    std::iota(ids.begin(), ids.end(), 10);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::map<State, State> to;
    for (std::size_t i = 0; i < n; ++i) to[t.states()[i]] = ids[i];
    const Transducer u = relabel(t, to);
    try {
      const FrequencyAutomaton a = build_frequency_automaton(t);
      const FrequencyAutomaton b = build_frequency_automaton(u);
      EXPECT_TRUE(equivalent(a.automaton, b.automaton));
    } catch (const DivergentStar&) {
      EXPECT_THROW(build_frequency_automaton(u), DivergentStar);
    } catch (const NonUniqueStationary&) {
      EXPECT_THROW(build_frequency_automaton(u), NonUniqueStationary);
    }
  }
}

}  // namespace
}  // namespace normcheck
