/*
Copyright 2026 The hygt authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hygt/errors.hpp"

namespace hygt {

/// Dense square matrix of doubles, row-major. Deliberately minimal: just the
/// operations the transforms, statistics and tests need.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), v_(n * n, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t n() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

  std::span<double> row(std::size_t i) { return {v_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {v_.data() + i * n_, n_}; }

  std::vector<double>& data() { return v_; }
  const std::vector<double>& data() const { return v_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> v_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) throw ArgumentError("matrix dimension mismatch");
  const std::size_t n = a.n();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline std::vector<double> multiply(const Matrix& a, std::span<const double> x) {
  if (a.n() != x.size()) throw ArgumentError("matrix/vector dimension mismatch");
  const std::size_t n = a.n();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline Matrix transposed(const Matrix& a) {
  const std::size_t n = a.n();
  Matrix t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(j, i) = a(i, j);
  return t;
}

inline double trace(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) s += a(i, i);
  return s;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) throw ArgumentError("matrix dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_abs_off_diag(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j)
      if (i != j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

}  // namespace hygt
