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

#ifndef NORMCHECK_RATIONAL_HPP_
#define NORMCHECK_RATIONAL_HPP_

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "normcheck/error.hpp"

namespace normcheck {

/// Arbitrary-precision rational kept in canonical form (positive denominator,
/// coprime parts). GMP canonicalizes after every arithmetic operation; values
/// built from raw parts go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(long numerator, long denominator = 1) {
  if (denominator == 0) throw Error("rational with zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

/// "p/q", with "/q" omitted when q == 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

/// Parses "p", "-p", "p/q" or "-p/q". `line` is only used for diagnostics.
inline Rational parse_rational(std::string_view text, std::size_t line = 0) {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  std::string_view num_digits = num;
  if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
  if (!detail::all_digits(num_digits))
    throw ParseError("malformed rational '" + std::string(text) + "'", line);
  if (!den.empty() && den.front() == '-') {
    if (detail::all_digits(den.substr(1)))
      throw NegativeDenominator("negative denominator in '" + std::string(text) + "'", line);
    throw ParseError("malformed rational '" + std::string(text) + "'", line);
  }
  if (!detail::all_digits(den))
    throw ParseError("malformed rational '" + std::string(text) + "'", line);

  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", line);
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace normcheck

#endif  // NORMCHECK_RATIONAL_HPP_
