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

#ifndef NORMCHECK_IO_HPP_
#define NORMCHECK_IO_HPP_

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normcheck/error.hpp"
#include "normcheck/frequency.hpp"
#include "normcheck/linalg.hpp"
#include "normcheck/rational.hpp"
#include "normcheck/transducer.hpp"
#include "normcheck/weighted_automaton.hpp"

// Line-oriented documents. '#' starts a comment; blank lines are ignored.
//
// Transducer:
//   input-alphabet: a b
//   output-alphabet: a b
//   initial: 1
//   states: 1 2 3
//   trans: <src> <input> <output|-> <dst>
//   parent: <state> <parent>        (split states of normalized machines;
//                                    their transitions use '-' as input)
//
// Weighted automaton:
//   alphabet: 0 1
//   state: <id> init <p/q> final <p/q>
//   trans: <src> <symbol> <p/q> <dst>

namespace normcheck {

namespace detail {

struct Line {
  std::size_t number;
  std::string key;
  std::vector<std::string> fields;
};

inline std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto colon = raw.find(':');
    std::istringstream rest(colon == std::string::npos ? raw : raw.substr(colon + 1));
    std::string key = colon == std::string::npos ? raw : raw.substr(0, colon);
    key.erase(0, key.find_first_not_of(" \t\r"));
    key.erase(key.find_last_not_of(" \t\r") + 1);
    if (key.empty() && colon == std::string::npos) continue;
    if (colon == std::string::npos) throw ParseError("expected '<key>: <fields>'", number);
    Line line{number, key, {}};
    for (std::string f; rest >> f;) line.fields.push_back(f);
    lines.push_back(std::move(line));
  }
  return lines;
}

inline State parse_state(const std::string& s, std::size_t line) {
  State v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("malformed state identifier '" + s + "'", line);
  return v;
}

inline Symbol parse_symbol(const std::string& s, std::size_t line) {
  if (s.size() != 1 || s == "-") throw ParseError("symbols are single characters, got '" + s + "'", line);
  return s[0];
}

inline Alphabet parse_alphabet(const Line& l) {
  std::string symbols;
  for (const auto& f : l.fields) symbols.push_back(parse_symbol(f, l.number));
  try {
    return Alphabet(symbols);
  } catch (const StructureError& e) {
    throw ParseError(e.what(), l.number);
  }
}

inline void expect_fields(const Line& l, std::size_t n) {
  if (l.fields.size() != n)
    throw ParseError("'" + l.key + "' expects " + std::to_string(n) + " fields, got " +
                     std::to_string(l.fields.size()),
                     l.number);
}

template <class T>
void set_once(std::optional<T>& slot, T value, const Line& l) {
  if (slot) throw ParseError("duplicate '" + l.key + "' line", l.number);
  slot = std::move(value);
}

inline std::string spaced(std::string_view symbols) {
  std::string out;
  for (char c : symbols) {
    if (!out.empty()) out += ' ';
    out += c;
  }
  return out;
}

}  // namespace detail

inline Transducer parse_transducer(std::string_view text) {
  std::optional<Alphabet> input, output;
  std::optional<State> initial;
  std::optional<std::vector<State>> states;
  std::vector<detail::Line> trans, parents;
  std::size_t initial_line = 0;

  for (auto& l : detail::split_lines(text)) {
    if (l.key == "input-alphabet") {
      detail::set_once(input, detail::parse_alphabet(l), l);
    } else if (l.key == "output-alphabet") {
      detail::set_once(output, detail::parse_alphabet(l), l);
    } else if (l.key == "initial") {
      detail::expect_fields(l, 1);
      detail::set_once(initial, detail::parse_state(l.fields[0], l.number), l);
      initial_line = l.number;
    } else if (l.key == "states") {
      std::vector<State> s;
      for (const auto& f : l.fields) s.push_back(detail::parse_state(f, l.number));
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw ParseError("duplicate state identifier", l.number);
      detail::set_once(states, std::move(s), l);
    } else if (l.key == "trans") {
      detail::expect_fields(l, 4);
      trans.push_back(std::move(l));
    } else if (l.key == "parent") {
      detail::expect_fields(l, 2);
      parents.push_back(std::move(l));
    } else {
      throw ParseError("unknown key '" + l.key + "'", l.number);
    }
  }
  if (!input) throw ParseError("missing 'input-alphabet' line");
  if (!output) throw ParseError("missing 'output-alphabet' line");
  if (!initial) throw ParseError("missing 'initial' line");
  if (!states) throw ParseError("missing 'states' line");

  const auto declared = [&](const std::string& field, std::size_t line) {
    const State s = detail::parse_state(field, line);
    if (!std::binary_search(states->begin(), states->end(), s))
      throw UnknownState("undeclared state " + field, line);
    return s;
  };
  if (!std::binary_search(states->begin(), states->end(), *initial))
    throw UnknownState("undeclared initial state " + std::to_string(*initial), initial_line);

  std::map<State, State> parent_of;
  for (const auto& l : parents)
    if (!parent_of.emplace(declared(l.fields[0], l.number), declared(l.fields[1], l.number)).second)
      throw ParseError("duplicate parent for state " + l.fields[0], l.number);

  std::vector<Transition> transitions;
  for (const auto& l : trans) {
    Transition t;
    t.source = declared(l.fields[0], l.number);
    if (l.fields[1] == "-") {
      if (!parent_of.contains(t.source))
        throw ParseError("epsilon input is only allowed on split states", l.number);
    } else {
      t.input = detail::parse_symbol(l.fields[1], l.number);
      if (!input->contains(*t.input))
        throw UnknownSymbol("input symbol '" + l.fields[1] + "' not in input alphabet", l.number);
    }
    if (l.fields[2] != "-") {
      t.output = l.fields[2];
      for (char c : t.output)
        if (!output->contains(c))
          throw UnknownSymbol(std::string("output symbol '") + c + "' not in output alphabet",
                              l.number);
    }
    t.target = declared(l.fields[3], l.number);
    transitions.push_back(std::move(t));
  }
  return Transducer(std::move(*states), std::move(*input), std::move(*output),
                    std::move(transitions), *initial, std::move(parent_of));
}

inline std::string serialize_transducer(const Transducer& t) {
  std::ostringstream out;
  out << "input-alphabet: " << detail::spaced(t.input_alphabet().symbols()) << '\n';
  out << "output-alphabet: " << detail::spaced(t.output_alphabet().symbols()) << '\n';
  out << "initial: " << t.initial() << '\n';
  out << "states:";
  for (State s : t.states()) out << ' ' << s;
  out << '\n';
  for (const auto& [child, parent] : t.parents()) out << "parent: " << child << ' ' << parent << '\n';
  for (const auto& tr : t.transitions())
    out << "trans: " << tr.source << ' ' << (tr.input ? std::string(1, *tr.input) : "-") << ' '
        << (tr.output.empty() ? "-" : tr.output) << ' ' << tr.target << '\n';
  return out.str();
}

inline WeightedAutomaton parse_weighted_automaton(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::map<State, std::pair<Rational, Rational>> states;  // init, final
  std::vector<detail::Line> trans;

  for (auto& l : detail::split_lines(text)) {
    if (l.key == "alphabet") {
      detail::set_once(alphabet, detail::parse_alphabet(l), l);
    } else if (l.key == "state") {
      if (l.fields.empty() || l.fields.size() % 2 == 0)
        throw ParseError("expected 'state: <id> [init <p/q>] [final <p/q>]'", l.number);
      const State s = detail::parse_state(l.fields[0], l.number);
      std::pair<Rational, Rational> w{0, 0};
      std::set<std::string> seen;
      for (std::size_t i = 1; i < l.fields.size(); i += 2) {
        const std::string& k = l.fields[i];
        if ((k != "init" && k != "final") || !seen.insert(k).second)
          throw ParseError("unexpected '" + k + "' in state line", l.number);
        (k == "init" ? w.first : w.second) = parse_rational(l.fields[i + 1], l.number);
      }
      if (!states.emplace(s, std::move(w)).second)
        throw ParseError("duplicate state " + l.fields[0], l.number);
    } else if (l.key == "trans") {
      detail::expect_fields(l, 4);
      trans.push_back(std::move(l));
    } else {
      throw ParseError("unknown key '" + l.key + "'", l.number);
    }
  }
  if (!alphabet) throw ParseError("missing 'alphabet' line");

  std::vector<State> ids;
  RationalVector initial, final_weights;
  for (const auto& [s, w] : states) {
    ids.push_back(s);
    initial.push_back(w.first);
    final_weights.push_back(w.second);
  }
  std::vector<WeightedTransition> transitions;
  for (const auto& l : trans) {
    WeightedTransition t{0, 0, 0, 0};
    t.source = detail::parse_state(l.fields[0], l.number);
    t.symbol = detail::parse_symbol(l.fields[1], l.number);
    t.weight = parse_rational(l.fields[2], l.number);
    t.target = detail::parse_state(l.fields[3], l.number);
    if (!states.contains(t.source)) throw UnknownState("undeclared state " + l.fields[0], l.number);
    if (!states.contains(t.target)) throw UnknownState("undeclared state " + l.fields[3], l.number);
    if (!alphabet->contains(t.symbol))
      throw UnknownSymbol("symbol '" + l.fields[1] + "' not in alphabet", l.number);
    transitions.push_back(std::move(t));
  }
  return WeightedAutomaton(std::move(ids), *alphabet, transitions, std::move(initial),
                           std::move(final_weights));
}

/// Zero-weight transitions are omitted.
inline std::string serialize_weighted_automaton(const WeightedAutomaton& a) {
  std::ostringstream out;
  out << "alphabet: " << detail::spaced(a.alphabet().symbols()) << '\n';
  for (std::size_t i = 0; i < a.size(); ++i)
    out << "state: " << a.states()[i] << " init " << to_string(a.initial()[i]) << " final "
        << to_string(a.final_weights()[i]) << '\n';
  for (const auto& t : a.transitions())
    out << "trans: " << t.source << ' ' << t.symbol << ' ' << to_string(t.weight) << ' '
        << t.target << '\n';
  return out.str();
}

/// `label =` followed by one commented, column-aligned row per line.
inline std::string format_matrix(std::string_view label, const RationalMatrix& m) {
  std::vector<std::size_t> width(m.cols(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      width[j] = std::max(width[j], to_string(m(i, j)).size());
  std::string out = "# " + std::string(label) + " =\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += "#  ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string cell = to_string(m(i, j));
      out += ' ' + std::string(width[j] - cell.size(), ' ') + cell;
    }
    out += '\n';
  }
  return out;
}

/// E, E*, N_b, E* N_b, P and pi as comment lines, so the dump can follow an
/// automaton document without breaking it.
inline std::string format_matrix_dump(const FrequencyAutomaton& fa) {
  std::string out = "# normalized states:";
  for (State s : fa.normalized.states()) out += ' ' + std::to_string(s);
  out += '\n';
  out += format_matrix("E", fa.e);
  out += format_matrix("E*", fa.e_star);
  for (const auto& [b, n] : fa.n) out += format_matrix(std::string("N[") + b + "]", n);
  for (char b : fa.automaton.alphabet())
    out += format_matrix(std::string("E* N[") + b + "]", fa.automaton.matrix(b));
  out += format_matrix("P", fa.p);
  out += "# pi =";
  for (const auto& x : fa.pi) out += ' ' + to_string(x);
  out += '\n';
  return out;
}

}  // namespace normcheck

#endif  // NORMCHECK_IO_HPP_
