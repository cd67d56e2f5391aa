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

#ifndef NORMCHECK_LINALG_HPP_
#define NORMCHECK_LINALG_HPP_

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "normcheck/error.hpp"
#include "normcheck/rational.hpp"

namespace normcheck {

/// Dense row-major matrix. Element access through at() is bounds checked;
/// operator() is not.
template <class T>
class BasicMatrix {
 public:
  using value_type = T;

  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  BasicMatrix(std::initializer_list<std::initializer_list<T>> rows)
      : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  T& at(std::size_t r, std::size_t c) {
    check(r, c);
    return (*this)(r, c);
  }
  const T& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return (*this)(r, c);
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend BasicMatrix operator+(const BasicMatrix& a, const BasicMatrix& b) {
    same_shape(a, b);
    BasicMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }

  friend BasicMatrix operator-(const BasicMatrix& a, const BasicMatrix& b) {
    same_shape(a, b);
    BasicMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    BasicMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw std::out_of_range("matrix index (" + std::to_string(r) + "," + std::to_string(c) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  static void same_shape(const BasicMatrix& a, const BasicMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = BasicMatrix<Rational>;
using RationalVector = std::vector<Rational>;

/// Row vector times matrix.
template <class T>
std::vector<T> operator*(const std::vector<T>& v, const BasicMatrix<T>& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vector-matrix shape mismatch");
  std::vector<T> r(m.cols(), T(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) r[j] += v[i] * m(i, j);
  }
  return r;
}

template <class T>
std::vector<T> operator*(const BasicMatrix<T>& m, const std::vector<T>& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<T> r(m.rows(), T(0));
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) r[i] += m(i, j) * v[j];
  }
  return r;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace detail {

// Reduced row echelon form in place over exact arithmetic. Pivots are the
// first nonzero entry in the column at or below the current row. Only the
// first `pivot_cols` columns are eligible. Returns the pivot column of each
// pivot row.
inline std::vector<std::size_t> reduce_rows(RationalMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  Rational factor;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));

    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (m(row, j) != 0) m(row, j) *= inv;

    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Solves A·X = B exactly by Gauss-Jordan elimination.
inline RationalMatrix solve_linear(const RationalMatrix& a, const RationalMatrix& b) {
  if (!a.square()) throw std::invalid_argument("solve_linear: A must be square");
  if (b.rows() != a.rows()) throw std::invalid_argument("solve_linear: row count mismatch");
  const std::size_t n = a.rows();

  RationalMatrix aug(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  if (detail::reduce_rows(aug, n).size() != n) throw SingularMatrix("matrix is singular");

  RationalMatrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  return x;
}

/// E* = sum of all powers of E, i.e. the solution of (I - E)X = I.
inline RationalMatrix star(const RationalMatrix& e) {
  if (!e.square()) throw std::invalid_argument("star: matrix must be square");
  const auto id = RationalMatrix::identity(e.rows());
  RationalMatrix s;
  try {
    s = solve_linear(id - e, id);
  } catch (const SingularMatrix&) {
    throw DivergentStar("I - E is singular: an empty-output cycle has weight 1");
  }
  if (!(e * s + id == s)) throw std::logic_error("star: E* != E E* + I");
  return s;
}

/// Throws NotStochastic unless every entry is >= 0 and every row sums to 1.
inline void require_stochastic(const RationalMatrix& p) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j) < 0)
        throw NotStochastic("negative entry at (" + std::to_string(i) + "," + std::to_string(j) +
                            ")");
      sum += p(i, j);
    }
    if (sum != 1)
      throw NotStochastic("row " + std::to_string(i) + " sums to " + to_string(sum));
  }
}

/// The unique probability row vector pi with pi·P = pi.
inline RationalVector stationary_distribution(const RationalMatrix& p) {
  if (!p.square()) throw std::invalid_argument("stationary_distribution: P must be square");
  require_stochastic(p);
  const std::size_t n = p.rows();

  // Columns 0..n-1 hold (P - I)^T, column n the right-hand side; the last row
  // is the normalization sum(pi) = 1.
  RationalMatrix sys(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sys(i, j) = p(j, i) - (i == j ? 1 : 0);
  for (std::size_t j = 0; j < n; ++j) sys(n, j) = 1;
  sys(n, n) = 1;

  const auto pivots = detail::reduce_rows(sys, n);
  if (pivots.size() < n)
    throw NonUniqueStationary("stationary distribution is not unique (solution space of dimension " +
                              std::to_string(n - pivots.size() + 1) + ")");
  if (sys(n, n) != 0) throw std::logic_error("stationary_distribution: inconsistent system");

  RationalVector pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[pivots[i]] = sys(i, n);
  return pi;
}

}  // namespace normcheck

#endif  // NORMCHECK_LINALG_HPP_
