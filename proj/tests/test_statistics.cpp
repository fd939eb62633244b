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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "hygt/statistics.hpp"
#include "hygt/transform.hpp"
#include "oracles.hpp"

using namespace hygt;
using Catch::Matchers::WithinAbs;

TEST_CASE("correlation of simple sample sets") {
  const std::vector<std::vector<double>> one{{1.0, 0.0}};
  const CorrelationMatrix phi1 = accumulate_correlation(one);
  CHECK(phi1.values()(0, 0) == 1.0);
  CHECK(phi1.values()(0, 1) == 0.0);
  CHECK(phi1.values()(1, 1) == 0.0);
  CHECK(phi1.sample_count() == 1);

  const std::vector<std::vector<double>> pair{{1.0, 1.0}, {1.0, -1.0}};
  const CorrelationMatrix phi2 = accumulate_correlation(pair);
  CHECK(max_abs_diff(phi2.values(), Matrix::identity(2)) == 0.0);
}

TEST_CASE("correlation rejects empty and ragged input") {
  CHECK_THROWS_AS(accumulate_correlation(std::vector<std::vector<double>>{}), ArgumentError);
  const std::vector<std::vector<double>> ragged{{1.0, 2.0}, {1.0}};
  CHECK_THROWS_AS(accumulate_correlation(ragged), ArgumentError);
}

TEST_CASE("sharded accumulation merges to the full result") {
  Rng rng(5);
  std::vector<std::vector<double>> samples;
  for (int i = 0; i < 30; ++i) samples.push_back(oracle::random_vector(4, rng));

  const CorrelationMatrix full = accumulate_correlation(samples);
  const CorrelationMatrix a =
      accumulate_correlation(std::span(samples).subspan(0, 10));
  const CorrelationMatrix b =
      accumulate_correlation(std::span(samples).subspan(10));
  const CorrelationMatrix merged = merge_correlation(a, b);
  CHECK(merged.sample_count() == 30);
  CHECK(max_abs_diff(merged.values(), full.values()) < 1e-12);
}

TEST_CASE("monte carlo estimate approaches the true covariance") {
  const CorrelationMatrix truth = ar1_covariance_2d(2, 0.5);
  const ResidualDataset samples = sample_residuals(truth, 100000, 123);
  std::vector<std::vector<double>> vecs;
  for (const auto& b : samples.blocks()) vecs.push_back(b.values);
  const CorrelationMatrix est = accumulate_correlation(vecs);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK_THAT(est.values()(i, j), WithinAbs(truth.values()(i, j), 0.05));
}

TEST_CASE("eigendecomposition of the identity is the identity") {
  const CorrelationMatrix phi(Matrix::identity(4), 0);
  const KLTResult klt = jacobi_eigen(phi);
  CHECK(max_abs_diff(klt.basis, Matrix::identity(4)) == 0.0);
  for (const double ev : klt.eigenvalues) CHECK(ev == 1.0);
}

TEST_CASE("2x2 eigenpair against hand analysis") {
  Matrix m(2);
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 2.0;
  const KLTResult klt = jacobi_eigen(CorrelationMatrix(std::move(m), 0));
  CHECK_THAT(klt.eigenvalues[0], WithinAbs(3.0, 1e-12));
  CHECK_THAT(klt.eigenvalues[1], WithinAbs(1.0, 1e-12));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK_THAT(klt.basis(0, 0), WithinAbs(inv_sqrt2, 1e-12));
  CHECK_THAT(klt.basis(0, 1), WithinAbs(inv_sqrt2, 1e-12));
}

TEST_CASE("eigendecomposition diagonalizes random PSD matrices") {
  Rng rng(7);
  for (const std::size_t n : {16, 64, 256}) {
    const CorrelationMatrix phi(oracle::random_psd(n, rng), 0);
    const KLTResult klt = jacobi_eigen(phi);

    const Matrix kpk = multiply(multiply(klt.basis, phi.values()), transposed(klt.basis));
    Matrix lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda(i, i) = klt.eigenvalues[i];
    CHECK(max_abs_diff(kpk, lambda) < 1e-10 * phi.trace());

    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(klt.eigenvalues[i] >= klt.eigenvalues[i + 1]);
  }
}

TEST_CASE("klt transform preserves norm and decorrelates") {
  const CorrelationMatrix phi = ar1_covariance_2d(2, 0.9);
  const KLTResult klt = jacobi_eigen(phi);

  CHECK(klt_forward(klt, std::vector<double>{1, 2, 3, 4}).size() == 4);
  const KLTResult ident = jacobi_eigen(CorrelationMatrix(Matrix::identity(4), 0));
  CHECK(klt_forward(ident, std::vector<double>{1, 2, 3, 4}) == std::vector<double>{1, 2, 3, 4});

  Rng rng(8);
  const auto x = oracle::random_vector(4, rng);
  const auto y = klt_forward(klt, x);
  double nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  CHECK_THAT(std::sqrt(ny), WithinAbs(std::sqrt(nx), 1e-12));

  // Transformed training samples have vanishing cross-correlations.
  const ResidualDataset samples = sample_residuals(phi, 20000, 9);
  CorrelationAccumulator acc(4);
  for (const auto& b : samples.blocks()) acc.add(klt_forward(klt, b.values));
  const CorrelationMatrix trans = acc.finalize();
  const double m = static_cast<double>(samples.blocks().size());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double sigma =
          std::sqrt(klt.eigenvalues[i] * klt.eigenvalues[j] / m);
      CHECK(std::abs(trans.values()(i, j)) < 6.0 * sigma);
    }
  }
}

TEST_CASE("transformed variances") {
  const CorrelationMatrix phi = ar1_covariance_2d(2, 0.7);

  const VarianceVector ident = transformed_variances(Matrix::identity(4), phi);
  for (std::size_t i = 0; i < 4; ++i) CHECK(ident.values[i] == phi.values()(i, i));

  const KLTResult klt = jacobi_eigen(phi);
  const VarianceVector through_klt = transformed_variances(klt.basis, phi);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK_THAT(through_klt.values[i], WithinAbs(klt.eigenvalues[i], 1e-10));

  // Trace is conserved under any orthogonal transform.
  const Matrix t = to_matrix(oracle::random_model(2, 3, 55));
  const VarianceVector v = transformed_variances(t, phi);
  double sum = 0.0;
  for (const double x : v.values) sum += x;
  CHECK_THAT(sum, WithinAbs(phi.trace(), 1e-9 * phi.trace()));

  CHECK_THROWS_AS(transformed_variances(Matrix::identity(8), phi), ArgumentError);
}

TEST_CASE("coding gain of flat and simple spectra") {
  CHECK_THAT(coding_gain_db(VarianceVector{{2.0, 2.0, 2.0, 2.0}}), WithinAbs(0.0, 1e-12));

  const double expected = 10.0 * std::log10(2.0 / std::sqrt(3.0));
  CHECK_THAT(coding_gain_db(VarianceVector{{3.0, 1.0}}), WithinAbs(expected, 1e-12));
  CHECK_THAT(coding_gain_db(VarianceVector{{3.0, 1.0}}), WithinAbs(0.625, 5e-4));
}

TEST_CASE("coding gain clamps degenerate variances") {
  const CodingGain g = coding_gain(VarianceVector{{1.0, 0.0}});
  CHECK(g.clamped == 1);
  CHECK(g.gain_db > 100.0);  // floor at 1e-30 * mean

  const CodingGain zero = coding_gain(VarianceVector{{0.0, 0.0}});
  CHECK(zero.gain_db == 0.0);
  CHECK(zero.clamped == 2);
}

TEST_CASE("KLT gain on an AR(1) line matches the eigenvalue evaluation") {
  // 1-D AR(1), N = 8: build the Toeplitz matrix directly.
  const double rho = 0.95;
  Matrix m(8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      m(i, j) = std::pow(rho, std::abs(static_cast<double>(i) - static_cast<double>(j)));
  const CorrelationMatrix phi(std::move(m), 0);
  const KLTResult klt = jacobi_eigen(phi);

  const double via_eigen = coding_gain_db(VarianceVector{klt.eigenvalues});
  const double via_variances = coding_gain_db(transformed_variances(klt.basis, phi));
  CHECK_THAT(via_eigen, WithinAbs(via_variances, 1e-9));
  CHECK(via_eigen > 0.0);
}

TEST_CASE("2-D AR(1) covariance structure") {
  CHECK(max_abs_diff(ar1_covariance_2d(2, 0.0).values(), Matrix::identity(4)) == 0.0);

  const CorrelationMatrix phi = ar1_covariance_2d(2, 0.5);
  // pixel (0,0) is index 0, pixel (1,1) is index 3: one step in each axis.
  CHECK_THAT(phi.values()(0, 3), WithinAbs(0.25, 1e-15));
  CHECK_THAT(phi.values()(0, 1), WithinAbs(0.5, 1e-15));

  const KLTResult klt = jacobi_eigen(ar1_covariance_2d(4, 0.95));
  for (const double ev : klt.eigenvalues) CHECK(ev >= -1e-12);

  CHECK_THROWS_AS(ar1_covariance_2d(2, 1.0), ArgumentError);
  CHECK_THROWS_AS(ar1_covariance_2d(3, 0.5), ArgumentError);
}

TEST_CASE("sampling is deterministic and consistent") {
  const CorrelationMatrix phi(Matrix::identity(4), 0);
  const ResidualDataset a = sample_residuals(phi, 100, 42);
  const ResidualDataset b = sample_residuals(phi, 100, 42);
  REQUIRE(a.blocks().size() == b.blocks().size());
  for (std::size_t i = 0; i < a.blocks().size(); ++i)
    CHECK(a.blocks()[i].values == b.blocks()[i].values);

  const ResidualDataset big = sample_residuals(phi, 100000, 43);
  std::vector<std::vector<double>> vecs;
  for (const auto& blk : big.blocks()) vecs.push_back(blk.values);
  const CorrelationMatrix est = accumulate_correlation(vecs);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK_THAT(est.values()(i, j), WithinAbs(i == j ? 1.0 : 0.0, 0.05));

  CHECK_THROWS_AS(sample_residuals(phi, 0, 1), ArgumentError);
}
