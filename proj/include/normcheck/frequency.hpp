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

#ifndef NORMCHECK_FREQUENCY_HPP_
#define NORMCHECK_FREQUENCY_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "normcheck/error.hpp"
#include "normcheck/linalg.hpp"
#include "normcheck/rational.hpp"
#include "normcheck/transducer.hpp"
#include "normcheck/weighted_automaton.hpp"

namespace normcheck {

/// A normalized transducer with the probability of each transition:
/// 1/#A for symbol inputs, 1 for the epsilon steps of split chains.
struct WeightedTransducer {
  Transducer base;
  std::vector<Rational> weights;  // parallel to base.transitions()
};

inline WeightedTransducer weigh_transitions(const Transducer& normalized) {
  const Alphabet& a = normalized.input_alphabet();
  if (a.empty()) throw InvalidTransducer("empty input alphabet");
  const Rational symbol_weight = make_rational(1, static_cast<long>(a.size()));

  WeightedTransducer wt{normalized, {}};
  wt.weights.reserve(normalized.transitions().size());
  std::vector<Rational> outgoing(normalized.size());
  for (const auto& tr : normalized.transitions()) {
    wt.weights.push_back(tr.epsilon() ? Rational(1) : symbol_weight);
    outgoing[normalized.index_of(tr.source)] += wt.weights.back();
  }
  for (std::size_t i = 0; i < outgoing.size(); ++i)
    if (outgoing[i] != 1)
      throw InvalidTransducer("outgoing weights of state " +
                              std::to_string(normalized.states()[i]) + " sum to " +
                              to_string(outgoing[i]) + "; expected a normalized complete machine");
  return wt;
}

/// E[p][q]: total weight of empty-output transitions p -> q.
inline RationalMatrix empty_output_matrix(const WeightedTransducer& wt) {
  const Transducer& t = wt.base;
  RationalMatrix e(t.size(), t.size());
  for (std::size_t i = 0; i < t.transitions().size(); ++i) {
    const auto& tr = t.transitions()[i];
    if (tr.output.empty()) e(t.index_of(tr.source), t.index_of(tr.target)) += wt.weights[i];
  }
  return e;
}

/// N_b[p][q]: total weight of transitions p -> q whose output is exactly b.
inline RationalMatrix output_matrix(const WeightedTransducer& wt, Symbol b) {
  const Transducer& t = wt.base;
  if (!t.output_alphabet().contains(b))
    throw UnknownSymbol(std::string("symbol '") + b + "' not in output alphabet");
  RationalMatrix n(t.size(), t.size());
  for (std::size_t i = 0; i < t.transitions().size(); ++i) {
    const auto& tr = t.transitions()[i];
    if (tr.output.size() == 1 && tr.output[0] == b)
      n(t.index_of(tr.source), t.index_of(tr.target)) += wt.weights[i];
  }
  return n;
}

/// The weighted automaton giving output-block frequencies of a strongly
/// connected transducer on normal inputs, with the matrices it is built from.
/// Every matrix is indexed by the states of `normalized`.
struct FrequencyAutomaton {
  Transducer normalized;
  WeightedAutomaton automaton;
  RationalMatrix e;
  RationalMatrix e_star;
  std::map<Symbol, RationalMatrix> n;
  RationalMatrix p;
  RationalVector pi;
};

inline bool has_nonempty_output(const Transducer& t) {
  return std::any_of(t.transitions().begin(), t.transitions().end(),
                     [](const Transition& tr) { return !tr.output.empty(); });
}

/// Requires a deterministic, complete, strongly connected transducer with at
/// least one non-empty output. Throws AllOutputsEmpty, DivergentStar or
/// NonUniqueStationary for the degenerate cases.
inline FrequencyAutomaton build_frequency_automaton(const Transducer& t) {
  const ValidationReport report = validate(t);
  if (!report.ok()) throw InvalidTransducer("transducer is not deterministic and complete:\n" +
                                            describe(report));
  if (!is_strongly_connected(t)) throw InvalidTransducer("transducer is not strongly connected");
  if (!has_nonempty_output(t)) throw AllOutputsEmpty("every transition has an empty output");

  FrequencyAutomaton fa;
  fa.normalized = normalize(t);
  const WeightedTransducer wt = weigh_transitions(fa.normalized);
  const Alphabet& out = t.output_alphabet();
  const std::size_t size = fa.normalized.size();

  fa.e = empty_output_matrix(wt);
  fa.e_star = star(fa.e);
  fa.p = RationalMatrix(size, size);
  std::vector<RationalMatrix> weights;
  weights.reserve(out.size());
  for (char b : out) {
    RationalMatrix n_b = output_matrix(wt, b);
    weights.push_back(fa.e_star * n_b);
    fa.p = fa.p + weights.back();
    fa.n.emplace(b, std::move(n_b));
  }
  fa.pi = stationary_distribution(fa.p);
  fa.automaton = WeightedAutomaton(fa.normalized.states(), out, std::move(weights), fa.pi,
                                   RationalVector(size, Rational(1)));
  return fa;
}

}  // namespace normcheck

#endif  // NORMCHECK_FREQUENCY_HPP_
