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

#ifndef NORMCHECK_CLI_HPP_
#define NORMCHECK_CLI_HPP_

#include <chrono>
#include <cstddef>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "normcheck/decision.hpp"
#include "normcheck/error.hpp"
#include "normcheck/frequency.hpp"
#include "normcheck/io.hpp"
#include "normcheck/simulation.hpp"
#include "normcheck/transducer.hpp"
#include "normcheck/weighted_automaton.hpp"

// Command implementations behind the normcheck binary. Each returns the
// process exit code: 0 success / preserving, 1 not preserving (or, for
// simulate, a gap above tolerance), 2 invalid input or any other failure.

namespace normcheck::cli {

inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInvalid = 2;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Parses and validates a transducer document.
inline Transducer load_transducer(const std::string& path) {
  Transducer t = parse_transducer(read_file(path));
  const ValidationReport report = validate(t);
  if (!report.ok())
    throw InvalidTransducer("transducer is not deterministic and complete:\n" + describe(report));
  return t;
}

/// `champernowne:<k>` (k must equal the input alphabet size; digit d reads as
/// the d-th input symbol) or `file:<path>`.
class InputSpec {
 public:
  InputSpec(std::string_view spec, const Alphabet& input) {
    if (spec.starts_with("champernowne:")) {
      const std::string k(spec.substr(13));
      std::size_t base = 0;
      try {
        base = std::stoul(k);
      } catch (const std::exception&) {
        throw Error("malformed base in '" + std::string(spec) + "'");
      }
      if (base != input.size())
        throw Error("champernowne base " + k + " does not match input alphabet size " +
                    std::to_string(input.size()));
      source_ = std::make_unique<AnySource>(ChampernowneSource(input));
    } else if (spec.starts_with("file:")) {
      const std::string path(spec.substr(5));
      file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
      if (!*file_) throw Error("cannot read '" + path + "'");
      source_ = std::make_unique<AnySource>(StreamSource(*file_));
    } else {
      throw Error("unknown input source '" + std::string(spec) +
                  "' (expected champernowne:<k> or file:<path>)");
    }
  }

  AnySource& source() { return *source_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::unique_ptr<AnySource> source_;
};

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
}

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void print_timing(std::ostream& out, const Transducer& t, const Timer& timer) {
  out << "# size: " << t.size_measure() << '\n';
  out << "# time-ms: " << timer.elapsed_ms() << '\n';
}

}  // namespace detail

inline int cmd_check(const std::string& path, std::ostream& out, std::ostream& err,
                     bool timing = false) {
  return detail::guarded(err, [&] {
    const detail::Timer timer;
    const Transducer t = load_transducer(path);
    const Verdict v = preserves_normality(t);
    out << explain(v);
    if (timing) detail::print_timing(out, t, timer);
    return v.preserves ? kOk : kNegative;
  });
}

/// Weight of `word` in the frequency automaton of each reachable recurrent
/// component. A single component prints the bare weight.
inline int cmd_freq(const std::string& path, const std::string& word, std::ostream& out,
                    std::ostream& err) {
  return detail::guarded(err, [&] {
    const Transducer t = load_transducer(path);
    if (!t.output_alphabet().contains_all(word))
      throw UnknownSymbol("word '" + word + "' is not over the output alphabet");
    const auto components = reachable_recurrent_sccs(t);
    int code = kOk;
    for (const auto& c : components) {
      std::string value;
      try {
        value = to_string(word_weight(build_frequency_automaton(restrict_component(t, c)).automaton, word));
      } catch (const Error& e) {
        value = std::string("undefined (") + e.what() + ")";
        code = kInvalid;
      }
      if (components.size() == 1)
        out << value << '\n';
      else
        out << "component " << ::normcheck::detail::join_states(c) << ": " << value << '\n';
    }
    return code;
  });
}

/// Automaton document plus matrix dump for each reachable recurrent component.
inline int cmd_build(const std::string& path, std::ostream& out, std::ostream& err,
                     bool timing = false) {
  return detail::guarded(err, [&] {
    const detail::Timer timer;
    const Transducer t = load_transducer(path);
    const auto components = reachable_recurrent_sccs(t);
    for (const auto& c : components) {
      if (components.size() > 1)
        out << "# component: " << ::normcheck::detail::join_states(c) << '\n';
      const FrequencyAutomaton fa = build_frequency_automaton(restrict_component(t, c));
      out << serialize_weighted_automaton(fa.automaton);
      out << format_matrix_dump(fa);
    }
    if (timing) detail::print_timing(out, t, timer);
    return kOk;
  });
}

inline int cmd_run(const std::string& path, const std::string& source, std::size_t n,
                   std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Transducer t = load_transducer(path);
    InputSpec input(source, t.input_alphabet());
    out << run(t, input.source(), n) << '\n';
    return kOk;
  });
}

struct SimulateOptions {
  std::size_t n = 1'000'000;
  std::size_t max_len = 3;
  double tolerance = 0.01;
  bool csv = false;
};

inline int cmd_simulate(const std::string& path, const std::string& source,
                        const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Transducer t = load_transducer(path);
    InputSpec input(source, t.input_alphabet());
    const FrequencyReport r = compare_empirical(t, opts.n, opts.max_len, input.source());
    out << (opts.csv ? format_csv(r) : format_text(r));
    const bool within = r.max_gap() <= opts.tolerance;
    if (!opts.csv)
      out << "max gap: " << r.max_gap() << (within ? " <= " : " > ") << "tolerance "
          << opts.tolerance << '\n';
    return within ? kOk : kNegative;
  });
}

}  // namespace normcheck::cli

#endif  // NORMCHECK_CLI_HPP_
