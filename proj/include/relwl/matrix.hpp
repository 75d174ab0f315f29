// Copyright 2026 The relwl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "relwl/error.hpp"

namespace relwl {

using Rational = mpq_class;

template <typename T>
using Vector = std::vector<T>;

// Dense row-major matrix. Small by construction (desk-scale graphs), so no
// attempt is made at blocking or expression templates.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix Identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vector<T> column(std::size_t c) const {
    Vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(std::size_t c, const Vector<T>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ValidationError("matrix product: shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

template <typename T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& x) {
  if (a.cols() != x.size()) throw ValidationError("matrix-vector product: shape mismatch");
  Vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (x[k] == 0) continue;
      out[i] += a(i, k) * x[k];
    }
  }
  return out;
}

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix sum: shape mismatch");
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += b(i, j);
  return a;
}

template <typename T>
Matrix<T> operator*(const T& s, Matrix<T> a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= s;
  return a;
}

// Exact inverse by Gauss-Jordan elimination. Only meaningful for exact
// scalar types; throws when the matrix is singular.
Matrix<Rational> inverse(const Matrix<Rational>& m);

// Converts every entry with mpq_class::get_d.
Matrix<double> to_double(const Matrix<Rational>& m);
Vector<double> to_double(const Vector<Rational>& v);

}  // namespace relwl
