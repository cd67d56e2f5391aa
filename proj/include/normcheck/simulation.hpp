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

#ifndef NORMCHECK_SIMULATION_HPP_
#define NORMCHECK_SIMULATION_HPP_

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normcheck/decision.hpp"
#include "normcheck/error.hpp"
#include "normcheck/frequency.hpp"
#include "normcheck/rational.hpp"
#include "normcheck/transducer.hpp"
#include "normcheck/weighted_automaton.hpp"

namespace normcheck {

/// Streams the concatenation of the base-k expansions of 0, 1, 2, ... with
/// digit d written as alphabet[d].
class ChampernowneSource {
 public:
  explicit ChampernowneSource(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    if (alphabet_.size() < 2) throw std::invalid_argument("Champernowne word needs base >= 2");
  }

  std::optional<Symbol> next() {
    if (pos_ == digits_.size()) refill();
    return alphabet_[digits_[pos_++]];
  }

 private:
  void refill() {
    digits_.clear();
    std::uint64_t x = number_++;
    do {
      digits_.push_back(static_cast<std::size_t>(x % alphabet_.size()));
      x /= alphabet_.size();
    } while (x != 0);
    std::reverse(digits_.begin(), digits_.end());
    pos_ = 0;
  }

  Alphabet alphabet_;
  std::uint64_t number_ = 0;
  std::vector<std::size_t> digits_;
  std::size_t pos_ = 0;
};

/// First n symbols of the Champernowne word over `alphabet`.
inline Word champernowne(const Alphabet& alphabet, std::size_t n) {
  ChampernowneSource source(alphabet);
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(*source.next());
  return out;
}

/// Symbols read from a stream; whitespace is skipped.
class StreamSource {
 public:
  explicit StreamSource(std::istream& in) : in_(&in) {}
  std::optional<Symbol> next() {
    char c;
    while (in_->get(c))
      if (!std::isspace(static_cast<unsigned char>(c))) return c;
    return std::nullopt;
  }

 private:
  std::istream* in_;
};

/// Type-erased symbol source.
class AnySource {
 public:
  template <SymbolSource S>
  explicit AnySource(S source) : next_([s = std::move(source)]() mutable { return s.next(); }) {}
  std::optional<Symbol> next() { return next_(); }

 private:
  std::function<std::optional<Symbol>()> next_;
};

/// Occurrences of v in w, overlaps included.
inline std::size_t count_occurrences(std::string_view w, std::string_view v) {
  if (v.empty()) throw EmptyPattern("pattern must be non-empty");
  std::size_t count = 0;
  for (std::size_t pos = w.find(v); pos != std::string_view::npos; pos = w.find(v, pos + 1)) ++count;
  return count;
}

inline double empirical_frequency(std::string_view prefix, std::string_view v) {
  if (v.empty()) throw EmptyPattern("pattern must be non-empty");
  if (prefix.empty()) throw EmptyPrefix("prefix must be non-empty");
  return static_cast<double>(count_occurrences(prefix, v)) / static_cast<double>(prefix.size());
}

struct FrequencyReport {
  struct Entry {
    Word word;
    Rational predicted;
    double empirical = 0;
    double gap = 0;
  };

  std::vector<Entry> entries;
  std::size_t input_length = 0;
  std::size_t output_length = 0;
  std::vector<State> component;  // states of the analyzed recurrent component

  double max_gap() const {
    double g = 0;
    for (const auto& e : entries) g = std::max(g, e.gap);
    return g;
  }

  const Entry* find(std::string_view w) const {
    const auto it = std::find_if(entries.begin(), entries.end(),
                                 [w](const Entry& e) { return e.word == w; });
    return it == entries.end() ? nullptr : &*it;
  }
};

namespace detail {

// Frequency automaton of the recurrent component containing state_index.
inline FrequencyAutomaton component_automaton(const Transducer& t, std::size_t state_index,
                                              std::vector<State>& component) {
  if (is_strongly_connected(t)) {
    component = t.states();
    return build_frequency_automaton(t);
  }
  const State s = t.states()[state_index];
  for (const auto& c : recurrent_sccs(t))
    if (std::binary_search(c.begin(), c.end(), s)) {
      component = c;
      return build_frequency_automaton(restrict_component(t, c));
    }
  throw Error("run ended in transient state " + std::to_string(s) +
              "; no recurrent component reached");
}

}  // namespace detail

/// Runs `t` on n symbols of `source` and compares the frequency of every
/// output block of length 1..max_len with the frequency automaton of the
/// recurrent component the run ends in. Counting uses a rolling window, so
/// memory does not depend on n.
template <SymbolSource Source>
FrequencyReport compare_empirical(const Transducer& t, std::size_t n, std::size_t max_len,
                                  Source& source) {
  const ValidationReport report = validate(t);
  if (!report.ok())
    throw InvalidTransducer("transducer is not deterministic and complete:\n" + describe(report));
  if (max_len < 1 || max_len > 6) throw std::invalid_argument("max_len must be in 1..6");
  const Alphabet& b = t.output_alphabet();
  if (b.empty()) throw OutputTooShort("empty output alphabet");
  const std::size_t k = b.size();

  std::vector<std::size_t> span(max_len + 1, 1);  // k^L
  for (std::size_t L = 1; L <= max_len; ++L) span[L] = span[L - 1] * k;
  std::vector<std::vector<std::uint64_t>> counts(max_len + 1);
  for (std::size_t L = 1; L <= max_len; ++L) counts[L].assign(span[L], 0);
  std::vector<std::size_t> window(max_len + 1, 0);  // code of the last L symbols
  std::size_t produced = 0;

  const std::size_t last = run_into(t, source, n, [&](char c) {
    const std::size_t s = *b.index_of(c);
    ++produced;
    for (std::size_t L = 1; L <= max_len; ++L) {
      window[L] = (window[L] * k + s) % span[L];
      if (produced >= L) ++counts[L][window[L]];
    }
  });

  const std::size_t needed = 100 * span[max_len];
  if (produced < needed)
    throw OutputTooShort("output has " + std::to_string(produced) + " symbols; at least " +
                         std::to_string(needed) + " needed for blocks of length " +
                         std::to_string(max_len));

  FrequencyReport out;
  out.input_length = n;
  out.output_length = produced;
  const FrequencyAutomaton fa = detail::component_automaton(t, last, out.component);
  const WeightedAutomaton& a = fa.automaton;

  // Prefix vectors level by level; entries come out in shortlex order.
  std::vector<RationalVector> level{a.initial()};
  for (std::size_t L = 1; L <= max_len; ++L) {
    std::vector<RationalVector> next;
    next.reserve(level.size() * k);
    for (std::size_t code = 0; code < span[L]; ++code) {
      const RationalVector& prefix = level[code / k];
      next.push_back(prefix * a.matrix(b[code % k]));
      Word w(L, ' ');
      for (std::size_t i = L, c = code; i-- > 0; c /= k) w[i] = b[c % k];
      FrequencyReport::Entry e;
      e.word = std::move(w);
      e.predicted = dot(next.back(), a.final_weights());
      e.empirical = static_cast<double>(counts[L][code]) / static_cast<double>(produced);
      e.gap = std::fabs(e.empirical - to_double(e.predicted));
      out.entries.push_back(std::move(e));
    }
    level = std::move(next);
  }
  return out;
}

/// Aligned text columns.
inline std::string format_text(const FrequencyReport& r) {
  std::size_t word_w = 4, pred_w = 9;
  for (const auto& e : r.entries) {
    word_w = std::max(word_w, e.word.size());
    pred_w = std::max(pred_w, to_string(e.predicted).size());
  }
  std::ostringstream out;
  out << "input length: " << r.input_length << '\n';
  out << "output length: " << r.output_length << '\n';
  out << std::left << std::setw(static_cast<int>(word_w)) << "word" << "  "
      << std::setw(static_cast<int>(pred_w)) << "predicted" << "  " << std::setw(9) << "empirical"
      << "  gap\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& e : r.entries)
    out << std::setw(static_cast<int>(word_w)) << e.word << "  "
        << std::setw(static_cast<int>(pred_w)) << to_string(e.predicted) << "  " << std::setw(9)
        << e.empirical << "  " << e.gap << '\n';
  return out.str();
}

/// Comma-separated records: word, predicted "p/q", empirical, gap.
inline std::string format_csv(const FrequencyReport& r) {
  std::ostringstream out;
  out << "word,predicted,empirical,gap\n" << std::fixed << std::setprecision(6);
  for (const auto& e : r.entries)
    out << e.word << ',' << to_string(e.predicted) << ',' << e.empirical << ',' << e.gap << '\n';
  return out.str();
}

}  // namespace normcheck

#endif  // NORMCHECK_SIMULATION_HPP_
