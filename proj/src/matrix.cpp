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

#include "relwl/matrix.hpp"

#include <utility>

namespace relwl {

Matrix<Rational> inverse(const Matrix<Rational>& m) {
  if (m.rows() != m.cols()) throw ValidationError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Matrix<Rational> a = m;
  Matrix<Rational> inv = Matrix<Rational>::Identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) throw ValidationError("inverse: matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational factor = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(col, j);
        inv(i, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

Matrix<double> to_double(const Matrix<Rational>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Vector<double> to_double(const Vector<Rational>& v) {
  Vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace relwl
