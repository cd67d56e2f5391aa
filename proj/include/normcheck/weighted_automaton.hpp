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

#ifndef NORMCHECK_WEIGHTED_AUTOMATON_HPP_
#define NORMCHECK_WEIGHTED_AUTOMATON_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normcheck/error.hpp"
#include "normcheck/linalg.hpp"
#include "normcheck/rational.hpp"
#include "normcheck/transducer.hpp"

namespace normcheck {

/// A nonzero transition p --b--> q of a weighted automaton.
struct WeightedTransition {
  State source;
  Symbol symbol;
  Rational weight;
  State target;

  friend bool operator==(const WeightedTransition&, const WeightedTransition&) = default;
};

/// Weighted automaton over the rationals. Transition weights are held as one
/// dense matrix per symbol; absent transitions weigh 0.
class WeightedAutomaton {
 public:
  WeightedAutomaton() = default;

  /// `matrices[k]` holds the weights of alphabet[k], indexed by position in
  /// the sorted state list.
  WeightedAutomaton(std::vector<State> states, Alphabet alphabet, std::vector<RationalMatrix> matrices,
                    RationalVector initial, RationalVector final_weights)
      : states_(std::move(states)),
        alphabet_(std::move(alphabet)),
        matrices_(std::move(matrices)),
        initial_(std::move(initial)),
        final_(std::move(final_weights)) {
    if (!std::is_sorted(states_.begin(), states_.end()) ||
        std::adjacent_find(states_.begin(), states_.end()) != states_.end())
      throw StructureError("weighted automaton states must be sorted and distinct");
    const std::size_t n = states_.size();
    if (initial_.size() != n || final_.size() != n)
      throw StructureError("initial/final vectors must have one entry per state");
    if (matrices_.size() != alphabet_.size())
      throw StructureError("one weight matrix per symbol required");
    for (const auto& m : matrices_)
      if (m.rows() != n || m.cols() != n) throw StructureError("weight matrix has wrong shape");
  }

  /// Builds from a list of transitions; repeated (p, b, q) triples add up.
  WeightedAutomaton(std::vector<State> states, Alphabet alphabet,
                    const std::vector<WeightedTransition>& transitions, RationalVector initial,
                    RationalVector final_weights)
      : WeightedAutomaton(std::move(states), std::move(alphabet),
                          std::vector<RationalMatrix>{}, std::move(initial),
                          std::move(final_weights), transitions) {}

  const std::vector<State>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const RationalVector& initial() const noexcept { return initial_; }
  const RationalVector& final_weights() const noexcept { return final_; }

  std::size_t index_of(State s) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s)
      throw UnknownState("unknown state " + std::to_string(s));
    return static_cast<std::size_t>(it - states_.begin());
  }

  const RationalMatrix& matrix(Symbol b) const {
    const auto k = alphabet_.index_of(b);
    if (!k) throw UnknownSymbol(std::string("symbol '") + b + "' not in alphabet");
    return matrices_[*k];
  }

  Rational weight(State p, Symbol b, State q) const { return matrix(b)(index_of(p), index_of(q)); }

  /// Nonzero transitions ordered by source, symbol, then target.
  std::vector<WeightedTransition> transitions() const {
    std::vector<WeightedTransition> out;
    for (std::size_t p = 0; p < size(); ++p)
      for (std::size_t k = 0; k < alphabet_.size(); ++k)
        for (std::size_t q = 0; q < size(); ++q)
          if (matrices_[k](p, q) != 0)
            out.push_back({states_[p], alphabet_[k], matrices_[k](p, q), states_[q]});
    return out;
  }

  friend bool operator==(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    return a.states_ == b.states_ && a.alphabet_ == b.alphabet_ && a.matrices_ == b.matrices_ &&
           a.initial_ == b.initial_ && a.final_ == b.final_;
  }

 private:
  WeightedAutomaton(std::vector<State> states, Alphabet alphabet, std::vector<RationalMatrix>,
                    RationalVector initial, RationalVector final_weights,
                    const std::vector<WeightedTransition>& transitions)
      : WeightedAutomaton(states, alphabet,
                          std::vector<RationalMatrix>(alphabet.size(),
                                                      RationalMatrix(states.size(), states.size())),
                          std::move(initial), std::move(final_weights)) {
    for (const auto& t : transitions) {
      const auto k = alphabet_.index_of(t.symbol);
      if (!k) throw UnknownSymbol(std::string("symbol '") + t.symbol + "' not in alphabet");
      matrices_[*k](index_of(t.source), index_of(t.target)) += t.weight;
    }
  }

  std::vector<State> states_;
  Alphabet alphabet_;
  std::vector<RationalMatrix> matrices_;
  RationalVector initial_;
  RationalVector final_;
};

/// I · M_w1 ⋯ M_wk · F.
inline Rational word_weight(const WeightedAutomaton& a, std::string_view w) {
  RationalVector v = a.initial();
  for (char b : w) v = v * a.matrix(b);
  return dot(v, a.final_weights());
}

/// One state, initial and final weight 1, a loop of weight 1/#B per symbol.
inline WeightedAutomaton uniform_automaton(const Alphabet& alphabet) {
  if (alphabet.empty()) throw StructureError("uniform automaton needs a non-empty alphabet");
  const Rational w = make_rational(1, static_cast<long>(alphabet.size()));
  std::vector<RationalMatrix> m(alphabet.size(), RationalMatrix{{w}});
  return WeightedAutomaton({0}, alphabet, std::move(m), {Rational(1)}, {Rational(1)});
}

struct Equivalence {
  bool equivalent = true;
  std::optional<Word> witness;  // set iff !equivalent

  explicit operator bool() const noexcept { return equivalent; }
};

/// Decides weight-equivalence by exploring, breadth first, the space spanned
/// by the column vectors [M1_w F1; M2_w F2] of the two automata side by
/// side, keeping an exact reduced basis. The automata are equivalent iff
/// every such vector is orthogonal to [I1, -I2]; the first one found that
/// is not gives a shortest distinguishing word.
///
/// Final-weight vectors are usually much simpler than initial vectors (a
/// frequency automaton has all finals 1 but a stationary distribution as
/// initial vector), so this direction keeps the numbers small.
inline Equivalence equivalent(const WeightedAutomaton& a1, const WeightedAutomaton& a2) {
  if (!a1.alphabet().same_set(a2.alphabet()))
    throw AlphabetMismatch("alphabets differ: '" + a1.alphabet().symbols() + "' vs '" +
                           a2.alphabet().symbols() + "'");
  const std::size_t n1 = a1.size(), n = a1.size() + a2.size();

  RationalVector initial(n);
  for (std::size_t i = 0; i < n1; ++i) initial[i] = a1.initial()[i];
  for (std::size_t i = n1; i < n; ++i) initial[i] = -a2.initial()[i - n1];

  const auto advance = [&](Symbol b, const RationalVector& v) {
    RationalVector top(v.begin(), v.begin() + n1), bottom(v.begin() + n1, v.end());
    top = a1.matrix(b) * top;
    bottom = a2.matrix(b) * bottom;
    top.insert(top.end(), bottom.begin(), bottom.end());
    return top;
  };

  struct Row {
    RationalVector v;  // normalized so v[pivot] == 1
    std::size_t pivot;
  };
  std::vector<Row> basis;
  // Reduces `u` against the basis; returns true if it was independent and
  // has been added.
  const auto absorb = [&](RationalVector u) {
    Rational factor;
    for (const auto& row : basis) {
      if (u[row.pivot] == 0) continue;
      factor = u[row.pivot];
      for (std::size_t j = 0; j < n; ++j)
        if (row.v[j] != 0) u[j] -= factor * row.v[j];
    }
    const auto it = std::find_if(u.begin(), u.end(), [](const Rational& x) { return x != 0; });
    if (it == u.end()) return false;
    const std::size_t pivot = static_cast<std::size_t>(it - u.begin());
    const Rational inv = 1 / u[pivot];
    for (auto& x : u)
      if (x != 0) x *= inv;
    // Keep the basis fully reduced: its entries then depend only on the
    // spanned space, which stops them from growing with insertion order.
    for (auto& row : basis) {
      if (row.v[pivot] == 0) continue;
      factor = row.v[pivot];
      for (std::size_t j = 0; j < n; ++j)
        if (u[j] != 0) row.v[j] -= factor * u[j];
    }
    basis.push_back({std::move(u), pivot});
    return true;
  };

  RationalVector start(n);
  std::copy(a1.final_weights().begin(), a1.final_weights().end(), start.begin());
  std::copy(a2.final_weights().begin(), a2.final_weights().end(), start.begin() + n1);

  std::deque<std::pair<RationalVector, Word>> queue;
  if (dot(initial, start) != 0) return {false, Word{}};
  if (absorb(start)) queue.emplace_back(std::move(start), Word{});

  while (!queue.empty()) {
    auto [v, w] = std::move(queue.front());
    queue.pop_front();
    for (char b : a1.alphabet()) {
      RationalVector u = advance(b, v);
      if (dot(initial, u) != 0) return {false, b + w};
      if (absorb(u)) queue.emplace_back(std::move(u), b + w);
    }
  }
  return {true, std::nullopt};
}

/// Cap on brute-force enumeration depth: NORMCHECK_MAX_BRUTE, default 10.
inline std::size_t brute_force_bound() {
  if (const char* env = std::getenv("NORMCHECK_MAX_BRUTE")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 10;
}

/// All words of length <= k in shortlex order over the alphabet order.
inline std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t k) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= k; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (char b : alphabet) out.push_back(out[i] + b);
    begin = end;
  }
  return out;
}

/// word_weight of every word of length <= k, by enumeration.
inline std::map<Word, Rational> brute_force_weights(const WeightedAutomaton& a, std::size_t k,
                                                    std::size_t bound = brute_force_bound()) {
  if (k > bound)
    throw BoundExceeded("brute-force length " + std::to_string(k) + " exceeds bound " +
                        std::to_string(bound));
  std::map<Word, Rational> out;
  // Depth-first with shared prefixes: each prefix vector is computed once.
  std::vector<std::pair<Word, RationalVector>> todo{{Word{}, a.initial()}};
  while (!todo.empty()) {
    auto [w, v] = std::move(todo.back());
    todo.pop_back();
    out.emplace(w, dot(v, a.final_weights()));
    if (w.size() == k) continue;
    for (char b : a.alphabet()) todo.emplace_back(w + b, v * a.matrix(b));
  }
  return out;
}

}  // namespace normcheck

#endif  // NORMCHECK_WEIGHTED_AUTOMATON_HPP_
