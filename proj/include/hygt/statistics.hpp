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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "hygt/dataset.hpp"
#include "hygt/errors.hpp"
#include "hygt/matrix.hpp"
#include "hygt/rng.hpp"

namespace hygt {

/// Symmetric positive semi-definite correlation matrix of residual vectors,
/// Phi = (1/M) * sum r r^T. Exact symmetry is enforced on construction by
/// averaging with the transpose. sample_count is 0 for synthetic models.
class CorrelationMatrix {
 public:
  CorrelationMatrix(Matrix values, std::size_t sample_count)
      : values_(std::move(values)), sample_count_(sample_count) {
    const std::size_t n = values_.n();
    if (n == 0) throw ArgumentError("CorrelationMatrix: empty matrix");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = 0.5 * (values_(i, j) + values_(j, i));
        values_(i, j) = v;
        values_(j, i) = v;
      }
    }
  }

  std::size_t n() const { return values_.n(); }
  const Matrix& values() const { return values_; }
  std::size_t sample_count() const { return sample_count_; }
  double trace() const { return hygt::trace(values_); }

 private:
  Matrix values_;
  std::size_t sample_count_;
};

/// Incremental second-moment accumulator. Shards may accumulate disjoint
/// sample sets concurrently and be combined with merge_correlation.
class CorrelationAccumulator {
 public:
  explicit CorrelationAccumulator(std::size_t n) : sum_(n), count_(0) {
    if (n == 0) throw ArgumentError("CorrelationAccumulator: dimension must be positive");
  }

  void add(std::span<const double> r) {
    if (r.size() != sum_.n()) throw ArgumentError("CorrelationAccumulator: length mismatch");
    // Upper triangle only; mirrored at finalize, so symmetry is exact.
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double ri = r[i];
      for (std::size_t j = i; j < r.size(); ++j) sum_(i, j) += ri * r[j];
    }
    ++count_;
  }

  std::size_t count() const { return count_; }

  CorrelationMatrix finalize() const {
    if (count_ == 0) throw ArgumentError("CorrelationAccumulator: no samples");
    const std::size_t n = sum_.n();
    Matrix phi(n);
    const double inv = 1.0 / static_cast<double>(count_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double v = sum_(i, j) * inv;
        phi(i, j) = v;
        phi(j, i) = v;
      }
    }
    return CorrelationMatrix(std::move(phi), count_);
  }

 private:
  Matrix sum_;
  std::size_t count_;
};

/// Phi = (1/M) * sum r r^T over the given residual vectors.
inline CorrelationMatrix accumulate_correlation(std::span<const std::vector<double>> residuals) {
  if (residuals.empty()) throw ArgumentError("accumulate_correlation: empty sample set");
  CorrelationAccumulator acc(residuals.front().size());
  for (const auto& r : residuals) acc.add(r);
  return acc.finalize();
}

/// Weighted combination of correlation estimates from disjoint shards.
inline CorrelationMatrix merge_correlation(const CorrelationMatrix& a, const CorrelationMatrix& b) {
  if (a.n() != b.n()) throw ArgumentError("merge_correlation: dimension mismatch");
  const std::size_t total = a.sample_count() + b.sample_count();
  if (total == 0) throw ArgumentError("merge_correlation: no samples on either side");
  const double wa = static_cast<double>(a.sample_count()) / static_cast<double>(total);
  const double wb = static_cast<double>(b.sample_count()) / static_cast<double>(total);
  Matrix m(a.n());
  for (std::size_t i = 0; i < m.data().size(); ++i)
    m.data()[i] = wa * a.values().data()[i] + wb * b.values().data()[i];
  return CorrelationMatrix(std::move(m), total);
}

/// Eigendecomposition of a correlation matrix. Rows of `basis` are the
/// eigenvectors, ordered by descending eigenvalue, each row's first
/// largest-magnitude entry made non-negative, so basis * Phi * basis^T is
/// diagonal. This is the decorrelating transform and the coding-gain
/// reference.
struct KLTResult {
  Matrix basis;
  std::vector<double> eigenvalues;
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 100;

}  // namespace detail

/// Cyclic Jacobi eigendecomposition: plane rotations zero each off-diagonal
/// pair in turn until the largest off-diagonal magnitude drops below
/// 1e-12 * trace (or 100 sweeps, which raises NumericalError).
inline KLTResult jacobi_eigen(const CorrelationMatrix& phi) {
  const std::size_t n = phi.n();
  Matrix a = phi.values();
  Matrix v = Matrix::identity(n);  // columns accumulate the eigenvectors

  const double thresh = 1e-12 * std::max(std::abs(phi.trace()), 1e-300);
  int sweep = 0;
  for (; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off < thresh) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < thresh * 1e-4) continue;
        // Stable two-sided rotation (Golub & Van Loan form).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = c * arp - s * arq;
            a(p, r) = a(r, p);
            a(r, q) = c * arq + s * arp;
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = c * vrq + s * vrp;
        }
      }
    }
  }
  if (sweep == detail::kJacobiMaxSweeps) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    throw NumericalError("jacobi_eigen: no convergence after 100 sweeps, off-diagonal residual " +
                         std::to_string(off));
  }

  // Sort eigenpairs by descending eigenvalue; ties keep original order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  KLTResult out{Matrix(n), std::vector<double>(n)};
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t src = order[row];
    out.eigenvalues[row] = a(src, src);
    for (std::size_t j = 0; j < n; ++j) out.basis(row, j) = v(j, src);
    // Sign canonicalization: first entry of largest magnitude made >= 0.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double mag = std::abs(out.basis(row, j));
      if (mag > best) {
        best = mag;
        arg = j;
      }
    }
    if (out.basis(row, arg) < 0.0)
      for (std::size_t j = 0; j < n; ++j) out.basis(row, j) = -out.basis(row, j);
  }
  return out;
}

/// y = K * r.
inline std::vector<double> klt_forward(const KLTResult& klt, std::span<const double> r) {
  return multiply(klt.basis, r);
}

/// Variances of transformed coefficients for a given orthogonal transform.
struct VarianceVector {
  std::vector<double> values;
};

/// v_i = (T * Phi * T^T)_ii, computed as one quadratic form per row without
/// materializing the matrix product.
inline VarianceVector transformed_variances(const Matrix& t, const CorrelationMatrix& phi) {
  const std::size_t n = phi.n();
  if (t.n() != n) throw ArgumentError("transformed_variances: dimension mismatch");
  VarianceVector out;
  out.values.resize(n);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = t.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += phi.values()(j, k) * row[k];
      w[j] = s;
    }
    double v = 0.0;
    for (std::size_t j = 0; j < n; ++j) v += row[j] * w[j];
    out.values[i] = v;
  }
  return out;
}

struct CodingGain {
  double gain_db = 0.0;
  std::size_t clamped = 0;  // variances at or below the degeneracy floor
};

/// High-rate transform coding gain: 10*log10(arithmetic mean / geometric
/// mean) of the variances, the geometric mean computed via the mean of logs.
/// Variances at or below 1e-30 times the mean are clamped to that floor and
/// counted, signaling a degenerate (near-singular) source.
inline CodingGain coding_gain(const VarianceVector& v) {
  if (v.values.empty()) throw ArgumentError("coding_gain: empty variance vector");
  const std::size_t n = v.values.size();
  double mean = 0.0;
  for (const double x : v.values) mean += x;
  mean /= static_cast<double>(n);
  if (!(mean > 0.0)) return CodingGain{0.0, n};  // all-zero (or invalid) source

  const double floor = 1e-30 * mean;
  CodingGain out;
  double log_sum = 0.0;
  for (const double x : v.values) {
    const double clamped = std::max(x, floor);
    if (x <= floor) ++out.clamped;
    log_sum += std::log10(clamped);
  }
  out.gain_db = 10.0 * (std::log10(mean) - log_sum / static_cast<double>(n));
  return out;
}

inline double coding_gain_db(const VarianceVector& v) { return coding_gain(v).gain_db; }

/// Separable first-order autoregressive model over a square pixel block:
/// 1-D Toeplitz A with A_ij = rho^|i-j|, 2-D covariance A (x) A over
/// raster-ordered pixels, N = block_size^2.
inline CorrelationMatrix ar1_covariance_2d(int block_size, double rho) {
  if (rho < 0.0 || rho >= 1.0) throw ArgumentError("ar1_covariance_2d: need 0 <= rho < 1");
  if (block_size < 1 || (block_size & (block_size - 1)) != 0)
    throw ArgumentError("ar1_covariance_2d: block_size must be a power of two");
  const std::size_t bs = static_cast<std::size_t>(block_size);
  const std::size_t n = bs * bs;
  std::vector<double> pow_rho(bs, 1.0);
  for (std::size_t d = 1; d < bs; ++d) pow_rho[d] = pow_rho[d - 1] * rho;
  Matrix m(n);
  for (std::size_t r1 = 0; r1 < bs; ++r1)
    for (std::size_t c1 = 0; c1 < bs; ++c1)
      for (std::size_t r2 = 0; r2 < bs; ++r2)
        for (std::size_t c2 = 0; c2 < bs; ++c2) {
          const std::size_t dr = r1 > r2 ? r1 - r2 : r2 - r1;
          const std::size_t dc = c1 > c2 ? c1 - c2 : c2 - c1;
          m(r1 * bs + c1, r2 * bs + c2) = pow_rho[dr] * pow_rho[dc];
        }
  return CorrelationMatrix(std::move(m), 0);
}

/// Zero-mean Gaussian residual vectors with the given covariance, via
/// eigendecomposition coloring (r = K^T * sqrt(Lambda) * z). Deterministic
/// for a fixed seed; tiny negative eigenvalues are clamped to zero.
inline ResidualDataset sample_residuals(const CorrelationMatrix& phi, std::size_t count,
                                        std::uint64_t seed) {
  if (count == 0) throw ArgumentError("sample_residuals: count must be positive");
  const std::size_t n = phi.n();
  int log2_n = 0;
  while ((std::size_t{1} << log2_n) < n) ++log2_n;
  if ((std::size_t{1} << log2_n) != n || log2_n < 1)
    throw ArgumentError("sample_residuals: dimension must be a power of two >= 2");

  const KLTResult klt = jacobi_eigen(phi);
  std::vector<double> scale(n);
  for (std::size_t i = 0; i < n; ++i) scale[i] = std::sqrt(std::max(klt.eigenvalues[i], 0.0));

  Rng rng(seed);
  std::vector<ResidualBlock> blocks;
  blocks.reserve(count);
  std::vector<double> z(n);
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < n; ++i) z[i] = scale[i] * rng.gaussian();
    ResidualBlock b;
    b.values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = z[i];
      if (zi == 0.0) continue;
      const auto row = klt.basis.row(i);
      for (std::size_t j = 0; j < n; ++j) b.values[j] += zi * row[j];
    }
    blocks.push_back(std::move(b));
  }
  return ResidualDataset(log2_n, 1, std::move(blocks));
}

}  // namespace hygt
