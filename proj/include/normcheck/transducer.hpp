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

#ifndef NORMCHECK_TRANSDUCER_HPP_
#define NORMCHECK_TRANSDUCER_HPP_

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "normcheck/error.hpp"
#include "normcheck/linalg.hpp"
#include "normcheck/rational.hpp"

namespace normcheck {

using State = long;
using Symbol = char;
using Word = std::string;

/// Ordered set of single-character symbols.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string_view symbols) : symbols_(symbols) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const char c = symbols_[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '-' || c == '#' || c == '\0')
        throw StructureError(std::string("invalid symbol '") + c + "'");
      if (symbols_.find(c) != i) throw StructureError(std::string("duplicate symbol '") + c + "'");
    }
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  bool contains(Symbol c) const noexcept { return symbols_.find(c) != std::string::npos; }

  std::optional<std::size_t> index_of(Symbol c) const noexcept {
    const auto i = symbols_.find(c);
    if (i == std::string::npos) return std::nullopt;
    return i;
  }

  bool contains_all(std::string_view w) const noexcept {
    return std::all_of(w.begin(), w.end(), [this](char c) { return contains(c); });
  }

  const std::string& symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  /// Same symbols, ignoring order.
  bool same_set(const Alphabet& other) const {
    std::string a = symbols_, b = other.symbols_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string symbols_;
};

/// p --a|v--> q. An empty `input` is an epsilon transition, which only
/// normalization produces.
struct Transition {
  State source = 0;
  std::optional<Symbol> input;
  Word output;
  State target = 0;

  bool epsilon() const noexcept { return !input.has_value(); }
  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Immutable finite-state transducer. States are kept sorted; matrices built
/// from a transducer are indexed by position in states().
class Transducer {
 public:
  Transducer() = default;

  /// `parents` tags states created by normalization with the state whose
  /// transition they split. Exact duplicate transitions collapse to one.
  Transducer(std::vector<State> states, Alphabet input, Alphabet output,
             std::vector<Transition> transitions, State initial,
             std::map<State, State> parents = {})
      : states_(std::move(states)),
        input_(std::move(input)),
        output_(std::move(output)),
        initial_(initial),
        parents_(std::move(parents)) {
    std::sort(states_.begin(), states_.end());
    if (std::adjacent_find(states_.begin(), states_.end()) != states_.end())
      throw StructureError("duplicate state identifier");
    if (!contains(initial_))
      throw StructureError("initial state " + std::to_string(initial_) + " is not declared");
    for (const auto& [child, parent] : parents_)
      if (!contains(child) || !contains(parent))
        throw StructureError("parent tag references an undeclared state");

    transitions_.reserve(transitions.size());
    std::set<std::tuple<State, int, Word, State>> seen;
    for (auto& t : transitions) {
      if (!contains(t.source) || !contains(t.target))
        throw StructureError("transition references an undeclared state");
      if (t.input && !input_.contains(*t.input))
        throw StructureError(std::string("input symbol '") + *t.input + "' not in input alphabet");
      if (!t.input && !parents_.contains(t.source))
        throw StructureError("epsilon input on state " + std::to_string(t.source) +
                             ", which is not a split state");
      if (!output_.contains_all(t.output))
        throw StructureError("output word '" + t.output + "' not over the output alphabet");
      if (seen.emplace(t.source, t.input ? int(*t.input) : -1, t.output, t.target).second)
        transitions_.push_back(std::move(t));
    }
    build_index();
  }

  const std::vector<State>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }
  const Alphabet& input_alphabet() const noexcept { return input_; }
  const Alphabet& output_alphabet() const noexcept { return output_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  State initial() const noexcept { return initial_; }
  const std::map<State, State>& parents() const noexcept { return parents_; }

  std::optional<State> parent(State s) const {
    const auto it = parents_.find(s);
    if (it == parents_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(State s) const { return std::binary_search(states_.begin(), states_.end(), s); }

  std::size_t index_of(State s) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s)
      throw StructureError("unknown state " + std::to_string(s));
    return static_cast<std::size_t>(it - states_.begin());
  }

  /// First transition leaving the state at `state_index` on symbol `a`.
  const Transition* step(std::size_t state_index, Symbol a) const {
    const auto k = input_.index_of(a);
    if (!k) return nullptr;
    const int t = by_symbol_[state_index * input_.size() + *k];
    return t < 0 ? nullptr : &transitions_[static_cast<std::size_t>(t)];
  }

  const Transition* epsilon_step(std::size_t state_index) const {
    const int t = by_epsilon_[state_index];
    return t < 0 ? nullptr : &transitions_[static_cast<std::size_t>(t)];
  }

  /// Sum over transitions of |input| + |output|.
  std::size_t size_measure() const {
    std::size_t total = 0;
    for (const auto& t : transitions_) total += (t.input ? 1 : 0) + t.output.size();
    return total;
  }

  friend bool operator==(const Transducer& a, const Transducer& b) {
    return a.states_ == b.states_ && a.input_ == b.input_ && a.output_ == b.output_ &&
           a.transitions_ == b.transitions_ && a.initial_ == b.initial_ && a.parents_ == b.parents_;
  }

 private:
  void build_index() {
    by_symbol_.assign(states_.size() * input_.size(), -1);
    by_epsilon_.assign(states_.size(), -1);
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
      const auto& t = transitions_[i];
      const std::size_t s = index_of(t.source);
      int& slot = t.input ? by_symbol_[s * input_.size() + *input_.index_of(*t.input)]
                          : by_epsilon_[s];
      if (slot < 0) slot = static_cast<int>(i);
    }
  }

  std::vector<State> states_;
  Alphabet input_;
  Alphabet output_;
  std::vector<Transition> transitions_;
  State initial_ = 0;
  std::map<State, State> parents_;
  std::vector<int> by_symbol_;
  std::vector<int> by_epsilon_;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  struct Witness {
    State state;
    std::optional<Symbol> symbol;  // nullopt: an epsilon-input transition
    std::string reason;
  };

  bool deterministic = true;
  bool complete = true;
  std::vector<Witness> offending;

  bool ok() const noexcept { return deterministic && complete; }
};

/// Checks input-determinism and completeness. Epsilon inputs count as
/// non-deterministic: a user-level transducer consumes one symbol per step.
inline ValidationReport validate(const Transducer& t) {
  ValidationReport report;
  const auto& alphabet = t.input_alphabet();
  std::vector<int> seen(t.size() * alphabet.size(), 0);
  std::set<std::size_t> epsilon_sources;
  for (const auto& tr : t.transitions()) {
    const std::size_t s = t.index_of(tr.source);
    if (!tr.input) {
      if (epsilon_sources.insert(s).second) {
        report.deterministic = false;
        report.offending.push_back({tr.source, std::nullopt, "epsilon input"});
      }
      continue;
    }
    int& count = seen[s * alphabet.size() + *alphabet.index_of(*tr.input)];
    if (++count == 2) {
      report.deterministic = false;
      report.offending.push_back({tr.source, tr.input, "two transitions on the same input"});
    }
  }
  for (std::size_t s = 0; s < t.size(); ++s)
    for (std::size_t k = 0; k < alphabet.size(); ++k)
      if (seen[s * alphabet.size() + k] == 0) {
        report.complete = false;
        report.offending.push_back({t.states()[s], alphabet[k], "no transition"});
      }
  return report;
}

inline std::string describe(const ValidationReport& report) {
  std::string out;
  for (const auto& w : report.offending) {
    out += "state " + std::to_string(w.state) + ", ";
    out += w.symbol ? std::string("symbol '") + *w.symbol + "'" : std::string("epsilon");
    out += ": " + w.reason + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Execution

template <class S>
concept SymbolSource = requires(S s) {
  { s.next() } -> std::same_as<std::optional<Symbol>>;
};

/// Reads symbols from an in-memory word.
class WordSource {
 public:
  explicit WordSource(std::string_view word) : word_(word) {}
  std::optional<Symbol> next() {
    if (pos_ == word_.size()) return std::nullopt;
    return word_[pos_++];
  }

 private:
  std::string_view word_;
  std::size_t pos_ = 0;
};

/// Runs `t` from its initial state on the first `n` symbols of `source`,
/// passing every output symbol to `sink`. Epsilon transitions are followed
/// eagerly, including after the last consumed symbol. Returns the index of
/// the state reached.
template <SymbolSource Source, class Sink>
std::size_t run_into(const Transducer& t, Source& source, std::size_t n, Sink&& sink) {
  std::size_t state = t.index_of(t.initial());
  const auto follow_epsilon = [&] {
    for (std::size_t guard = 0; const Transition* tr = t.epsilon_step(state); ++guard) {
      if (guard > t.size()) throw StructureError("epsilon cycle in transducer");
      for (char b : tr->output) sink(b);
      state = t.index_of(tr->target);
    }
  };
  follow_epsilon();
  for (std::size_t i = 0; i < n; ++i) {
    const std::optional<Symbol> a = source.next();
    if (!a) throw Error("input exhausted after " + std::to_string(i) + " symbols");
    if (!t.input_alphabet().contains(*a))
      throw UnknownSymbol(std::string("input symbol '") + *a + "' not in input alphabet");
    const Transition* tr = t.step(state, *a);
    if (tr == nullptr)
      throw IncompleteAtState("no transition from state " + std::to_string(t.states()[state]) +
                              " on '" + *a + "'");
    for (char b : tr->output) sink(b);
    state = t.index_of(tr->target);
    follow_epsilon();
  }
  return state;
}

/// Output label of the run on the first `n` symbols of `source`.
template <SymbolSource Source>
Word run(const Transducer& t, Source& source, std::size_t n) {
  Word out;
  run_into(t, source, n, [&out](char b) { out.push_back(b); });
  return out;
}

inline Word run(const Transducer& t, std::string_view input) {
  WordSource source(input);
  return run(t, source, input.size());
}

// ---------------------------------------------------------------------------
// Graph structure

namespace detail {

inline std::vector<std::vector<std::size_t>> adjacency(const Transducer& t) {
  std::vector<std::vector<std::size_t>> adj(t.size());
  for (const auto& tr : t.transitions()) adj[t.index_of(tr.source)].push_back(t.index_of(tr.target));
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

}  // namespace detail

/// Strongly connected components (Tarjan, iterative). Each component is
/// sorted; components are ordered by their least state.
inline std::vector<std::vector<State>> scc_decompose(const Transducer& t) {
  const auto adj = detail::adjacency(t);
  const std::size_t n = t.size();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> frames;  // (node, next edge)
  std::vector<std::vector<State>> components;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      if (edge < adj[v].size()) {
        const std::size_t w = adj[v][edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<State> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(t.states()[w]);
        } while (w != done);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
    }
  }
  std::sort(components.begin(), components.end());
  return components;
}

/// Components with no transition leaving them.
inline std::vector<std::vector<State>> recurrent_sccs(const Transducer& t) {
  std::vector<std::vector<State>> result;
  for (auto& c : scc_decompose(t)) {
    const bool closed = std::none_of(t.transitions().begin(), t.transitions().end(),
                                     [&c](const Transition& tr) {
                                       return std::binary_search(c.begin(), c.end(), tr.source) &&
                                              !std::binary_search(c.begin(), c.end(), tr.target);
                                     });
    if (closed) result.push_back(std::move(c));
  }
  return result;
}

/// States reachable from the initial state, sorted.
inline std::vector<State> reachable_states(const Transducer& t) {
  const auto adj = detail::adjacency(t);
  std::vector<bool> seen(t.size(), false);
  std::vector<std::size_t> todo{t.index_of(t.initial())};
  seen[todo.front()] = true;
  while (!todo.empty()) {
    const std::size_t v = todo.back();
    todo.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        todo.push_back(w);
      }
  }
  std::vector<State> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (seen[i]) out.push_back(t.states()[i]);
  return out;
}

inline bool is_strongly_connected(const Transducer& t) { return scc_decompose(t).size() == 1; }

/// The sub-transducer on component `c`. The initial state becomes the least
/// state of `c`; frequency analysis of a strongly connected machine does not
/// depend on it.
inline Transducer restrict_component(const Transducer& t, std::span<const State> c) {
  std::vector<State> states(c.begin(), c.end());
  std::sort(states.begin(), states.end());
  if (states.empty()) throw StructureError("restrict: empty component");
  for (State s : states)
    if (!t.contains(s)) throw StructureError("restrict: unknown state " + std::to_string(s));
  const auto inside = [&states](State s) {
    return std::binary_search(states.begin(), states.end(), s);
  };

  std::vector<Transition> transitions;
  for (const auto& tr : t.transitions()) {
    if (!inside(tr.source)) continue;
    if (!inside(tr.target))
      throw NotRecurrent("transition " + std::to_string(tr.source) + " -> " +
                         std::to_string(tr.target) + " leaves the component");
    transitions.push_back(tr);
  }
  std::map<State, State> parents;
  for (const auto& [child, parent] : t.parents())
    if (inside(child) && inside(parent)) parents.emplace(child, parent);
  const State initial = states.front();
  return Transducer(std::move(states), t.input_alphabet(), t.output_alphabet(),
                    std::move(transitions), initial, std::move(parents));
}

// ---------------------------------------------------------------------------
// Normalization

/// Splits every transition p --a|b1..bn--> q with n >= 2 into
/// p --a|b1--> q1 --|b2--> ... --|bn--> q. Fresh states are numbered after the
/// largest existing identifier, in transition order then output position, and
/// record p as their parent.
inline Transducer normalize(const Transducer& t) {
  std::vector<State> states = t.states();
  std::map<State, State> parents = t.parents();
  std::vector<Transition> transitions;
  State next = states.empty() ? 0 : states.back() + 1;

  for (const auto& tr : t.transitions()) {
    if (tr.output.size() <= 1) {
      transitions.push_back(tr);
      continue;
    }
    State from = tr.source;
    for (std::size_t k = 0; k < tr.output.size(); ++k) {
      const bool last = k + 1 == tr.output.size();
      const State to = last ? tr.target : next++;
      if (!last) {
        states.push_back(to);
        parents.emplace(to, tr.source);
      }
      transitions.push_back({from, k == 0 ? tr.input : std::nullopt, Word(1, tr.output[k]), to});
      from = to;
    }
  }
  return Transducer(std::move(states), t.input_alphabet(), t.output_alphabet(),
                    std::move(transitions), t.initial(), std::move(parents));
}

// ---------------------------------------------------------------------------
// Markov chains

/// Row-stochastic matrix P[p][q] = sum of weights of transitions p -> q.
/// Without `weights` every transition weighs 1/#A. Outputs are ignored.
inline RationalMatrix markov_matrix(const Transducer& t,
                                    std::optional<std::span<const Rational>> weights = {}) {
  if (weights && weights->size() != t.transitions().size())
    throw std::invalid_argument("markov_matrix: one weight per transition required");
  if (!weights && t.input_alphabet().empty())
    throw NotStochastic("empty input alphabet");
  const Rational uniform = weights ? Rational(0) : make_rational(1, static_cast<long>(t.input_alphabet().size()));

  RationalMatrix p(t.size(), t.size());
  for (std::size_t i = 0; i < t.transitions().size(); ++i) {
    const auto& tr = t.transitions()[i];
    p(t.index_of(tr.source), t.index_of(tr.target)) += weights ? (*weights)[i] : uniform;
  }
  require_stochastic(p);
  return p;
}

/// Identifier of the state p * w in snake_automaton(t, |w|).
inline State snake_state(const Transducer& t, State p, std::string_view w) {
  std::size_t rank = 0, span = 1;
  for (char a : w) {
    const auto k = t.input_alphabet().index_of(a);
    if (!k) throw UnknownSymbol(std::string("symbol '") + a + "' not in input alphabet");
    rank = rank * t.input_alphabet().size() + *k;
    span *= t.input_alphabet().size();
  }
  return static_cast<State>(t.index_of(p) * span + rank);
}

/// The automaton on runs of length n: states p * w (w in A^n), transitions
/// (p * bw) --a--> (q * wa) for p --b--> q. Outputs are empty. For n = 0 the
/// machine itself is returned.
inline Transducer snake_automaton(const Transducer& t, std::size_t n) {
  if (n == 0) return t;
  const auto& alphabet = t.input_alphabet();
  const std::size_t k = alphabet.size();
  std::size_t span = 1;
  for (std::size_t i = 0; i < n; ++i) span *= k;
  const std::size_t tail = span / k;  // |A|^(n-1)

  std::vector<State> states(t.size() * span);
  for (std::size_t i = 0; i < states.size(); ++i) states[i] = static_cast<State>(i);
  std::vector<Transition> transitions;
  transitions.reserve(states.size() * k);
  for (std::size_t p = 0; p < t.size(); ++p)
    for (std::size_t rank = 0; rank < span; ++rank) {
      const Symbol first = alphabet[rank / tail];
      const Transition* tr = t.step(p, first);
      if (tr == nullptr)
        throw IncompleteAtState("no transition from state " + std::to_string(t.states()[p]) +
                                " on '" + first + "'");
      const std::size_t q = t.index_of(tr->target);
      const std::size_t rest = rank % tail;
      for (std::size_t a = 0; a < k; ++a)
        transitions.push_back({static_cast<State>(p * span + rank), alphabet[a], Word{},
                               static_cast<State>(q * span + rest * k + a)});
    }
  return Transducer(std::move(states), alphabet, t.output_alphabet(), std::move(transitions),
                    static_cast<State>(t.index_of(t.initial()) * span));
}

}  // namespace normcheck

#endif  // NORMCHECK_TRANSDUCER_HPP_
