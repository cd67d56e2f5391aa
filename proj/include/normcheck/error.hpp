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

#ifndef NORMCHECK_ERROR_HPP_
#define NORMCHECK_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace normcheck {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NORMCHECK_DEFINE_ERROR(Name, Base)  \
  class Name : public Base {                \
   public:                                  \
    using Base::Base;                       \
  }

// exact-linalg
NORMCHECK_DEFINE_ERROR(SingularMatrix, Error);
NORMCHECK_DEFINE_ERROR(DivergentStar, Error);
NORMCHECK_DEFINE_ERROR(NotStochastic, Error);
NORMCHECK_DEFINE_ERROR(NonUniqueStationary, Error);

// transducer
NORMCHECK_DEFINE_ERROR(StructureError, Error);
NORMCHECK_DEFINE_ERROR(IncompleteAtState, Error);
NORMCHECK_DEFINE_ERROR(NotRecurrent, Error);
NORMCHECK_DEFINE_ERROR(InvalidTransducer, Error);

// weighted-automaton / frequency-construction
NORMCHECK_DEFINE_ERROR(AlphabetMismatch, Error);
NORMCHECK_DEFINE_ERROR(BoundExceeded, Error);
NORMCHECK_DEFINE_ERROR(AllOutputsEmpty, Error);

// analysis-sim
NORMCHECK_DEFINE_ERROR(EmptyPattern, Error);
NORMCHECK_DEFINE_ERROR(EmptyPrefix, Error);
NORMCHECK_DEFINE_ERROR(OutputTooShort, Error);

#undef NORMCHECK_DEFINE_ERROR

/// An error that may point at a document line; `line()` is 1-based, 0 when
/// the error is not tied to a document.
class LocatedError : public Error {
 public:
  explicit LocatedError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ParseError : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

class UnknownState : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

class UnknownSymbol : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

class NegativeDenominator : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace normcheck

#endif  // NORMCHECK_ERROR_HPP_
