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

#ifndef NORMCHECK_DECISION_HPP_
#define NORMCHECK_DECISION_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "normcheck/error.hpp"
#include "normcheck/frequency.hpp"
#include "normcheck/rational.hpp"
#include "normcheck/transducer.hpp"
#include "normcheck/weighted_automaton.hpp"

namespace normcheck {

enum class ComponentStatus { preserving, non_preserving, all_empty_output, degenerate };

inline const char* to_string(ComponentStatus s) {
  switch (s) {
    case ComponentStatus::preserving: return "preserving";
    case ComponentStatus::non_preserving: return "non-preserving";
    case ComponentStatus::all_empty_output: return "all-empty-output";
    case ComponentStatus::degenerate: return "degenerate";
  }
  return "?";
}

struct ComponentVerdict {
  std::vector<State> states;
  ComponentStatus status = ComponentStatus::degenerate;
  std::optional<Word> witness;  // iff non_preserving
  std::optional<FrequencyAutomaton> automaton;
  std::string diagnostic;
};

struct Verdict {
  bool preserves = false;
  std::vector<ComponentVerdict> components;
};

/// Recurrent components that a run from the initial state can enter.
inline std::vector<std::vector<State>> reachable_recurrent_sccs(const Transducer& t) {
  const auto reachable = reachable_states(t);
  std::vector<std::vector<State>> out;
  for (auto& c : recurrent_sccs(t))
    if (std::binary_search(reachable.begin(), reachable.end(), c.front())) out.push_back(std::move(c));
  return out;
}

namespace detail {

inline Rational uniform_weight(std::size_t alphabet_size, std::size_t length) {
  Rational r = 1;
  for (std::size_t i = 0; i < length; ++i) r /= static_cast<unsigned long>(alphabet_size);
  return r;
}

inline constexpr std::size_t kWitnessSearchLimit = 4096;

// Block weights of each length sum to 1 on both sides, so at the length of a
// shortest distinguishing word some word of that length is below the uniform
// weight. Returns the first such word in shortlex order, or `fallback` when
// there are too many words of that length to scan.
inline Word under_represented(const WeightedAutomaton& a, const Word& fallback) {
  const std::size_t k = fallback.size();
  const Alphabet& b = a.alphabet();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= b.size();
    if (total > kWitnessSearchLimit) return fallback;
  }
  const Rational required = uniform_weight(b.size(), k);
  // Odometer over B^k, most significant position first.
  std::vector<std::size_t> digits(k, 0);
  std::vector<RationalVector> prefix(k + 1);
  prefix[0] = a.initial();
  std::size_t valid = 0;  // prefix[0..valid] are current
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t i = valid; i < k; ++i) prefix[i + 1] = prefix[i] * a.matrix(b[digits[i]]);
    if (dot(prefix[k], a.final_weights()) < required) {
      Word w;
      for (std::size_t d : digits) w.push_back(b[d]);
      return w;
    }
    std::size_t i = k;
    while (i > 0 && ++digits[i - 1] == b.size()) digits[--i] = 0;
    valid = i == 0 ? 0 : i - 1;
  }
  return fallback;
}

}  // namespace detail

/// Analyzes one strongly connected, deterministic, complete machine.
inline ComponentVerdict analyze_component(const Transducer& component) {
  ComponentVerdict v;
  v.states = component.states();
  if (!has_nonempty_output(component)) {
    v.status = ComponentStatus::all_empty_output;
    v.diagnostic = "every transition has an empty output; the output of any run is finite";
    return v;
  }
  try {
    v.automaton = build_frequency_automaton(component);
  } catch (const DivergentStar&) {
    v.status = ComponentStatus::degenerate;
    v.diagnostic = "empty-output cycle reachable with probability 1";
    return v;
  } catch (const NonUniqueStationary& e) {
    v.status = ComponentStatus::degenerate;
    v.diagnostic = e.what();
    return v;
  }
  const Equivalence eq = equivalent(v.automaton->automaton, uniform_automaton(component.output_alphabet()));
  if (eq) {
    v.status = ComponentStatus::preserving;
  } else {
    v.status = ComponentStatus::non_preserving;
    v.witness = detail::under_represented(v.automaton->automaton, *eq.witness);
  }
  return v;
}

/// Decides whether a deterministic complete transducer maps every normal
/// word to a normal word: it does iff every recurrent component reachable
/// from the initial state does.
inline Verdict preserves_normality(const Transducer& t) {
  const ValidationReport report = validate(t);
  if (!report.ok())
    throw InvalidTransducer("transducer is not deterministic and complete:\n" + describe(report));

  Verdict verdict;
  for (const auto& c : reachable_recurrent_sccs(t))
    verdict.components.push_back(analyze_component(restrict_component(t, c)));
  verdict.preserves = std::all_of(verdict.components.begin(), verdict.components.end(),
                                  [](const ComponentVerdict& c) {
                                    return c.status == ComponentStatus::preserving;
                                  });
  return verdict;
}

namespace detail {

inline std::string join_states(const std::vector<State>& states) {
  std::string out;
  for (State s : states) {
    if (!out.empty()) out += ' ';
    out += std::to_string(s);
  }
  return out;
}

inline std::string show_word(const Word& w) { return w.empty() ? "(empty word)" : w; }

}  // namespace detail

/// Line-oriented report, one section per recurrent component.
inline std::string explain(const Verdict& v) {
  std::ostringstream out;
  out << "normality preserved: " << (v.preserves ? "yes" : "no") << '\n';
  out << "recurrent components: " << v.components.size() << '\n';
  for (std::size_t i = 0; i < v.components.size(); ++i) {
    const auto& c = v.components[i];
    out << "component " << i + 1 << ": states " << detail::join_states(c.states) << '\n';
    out << "  status: " << to_string(c.status) << '\n';
    if (c.witness && c.automaton) {
      const Alphabet& b = c.automaton->automaton.alphabet();
      out << "  witness: " << detail::show_word(*c.witness) << '\n';
      out << "  predicted frequency: " << to_string(word_weight(c.automaton->automaton, *c.witness))
          << '\n';
      out << "  required frequency: "
          << to_string(detail::uniform_weight(b.size(), c.witness->size())) << '\n';
    }
    if (!c.diagnostic.empty()) out << "  diagnostic: " << c.diagnostic << '\n';
    if (c.automaton) {
      out << "  normalized states: " << detail::join_states(c.automaton->normalized.states()) << '\n';
      out << "  pi:";
      for (const auto& x : c.automaton->pi) out << ' ' << to_string(x);
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace normcheck

#endif  // NORMCHECK_DECISION_HPP_
