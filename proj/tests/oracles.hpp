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

// Test-only reference implementations, kept independent of the library's
// transform path so they can serve as oracles.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hygt/matrix.hpp"
#include "hygt/model.hpp"
#include "hygt/rng.hpp"

namespace oracle {

// Reference index-schedule generator, a direct transliteration of the
// classic bit-mask routine. Signature mirrors the original C form.
inline void hypercube_reference(int log2_N, std::vector<std::vector<int>>& m,
                                std::vector<std::vector<int>>& n) {
  m.assign(log2_N, {});
  n.assign(log2_N, {});
  for (int i = 0; i < log2_N; i++) {
    int hN = 1 << (log2_N - 1), k = 1 << i;
    m[i].resize(hN);
    n[i].resize(hN);
    for (int j = 0; j < hN; j++) {
      m[i][j] = j + (j & -k);
      n[i][j] = m[i][j] + k;
    }
  }
}

// Dense rotation matrix: cos at (m,m) and (n,n), +sin at (m,n), -sin at
// (n,m), identity elsewhere.
inline hygt::Matrix dense_rotation(std::size_t dim, std::size_t m, std::size_t n, double theta) {
  hygt::Matrix g = hygt::Matrix::identity(dim);
  g(m, m) = std::cos(theta);
  g(n, n) = std::cos(theta);
  g(m, n) = std::sin(theta);
  g(n, m) = -std::sin(theta);
  return g;
}

// Materializes a model by explicit dense matrix products, pass by pass, then
// the permutation matrix. Independent of the library's forward().
inline hygt::Matrix dense_model_matrix(const hygt::HyGTModel& model) {
  const std::size_t dim = model.dimension();
  hygt::Matrix t = hygt::Matrix::identity(dim);
  for (int r = 0; r < model.rounds(); ++r) {
    for (int p = 0; p < model.log2_n(); ++p) {
      const auto idx = hygt::hypercube_indices(model.log2_n(), p);
      for (std::size_t k = 0; k < idx.pairs(); ++k) {
        const auto g = dense_rotation(dim, idx.m[k], idx.n[k], model.angle(r, p, k));
        t = hygt::multiply(g, t);
      }
    }
  }
  if (model.permutation()) {
    const auto& perm = *model.permutation();
    hygt::Matrix p(dim);
    for (std::size_t i = 0; i < dim; ++i) p(i, perm[i]) = 1.0;
    t = hygt::multiply(p, t);
  }
  return t;
}

inline std::vector<double> random_vector(std::size_t n, hygt::Rng& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.gaussian();
  return x;
}

inline hygt::HyGTModel random_model(int log2_n, int rounds, std::uint64_t seed,
                                    bool with_permutation = false) {
  hygt::Rng rng(seed);
  std::vector<double> angles(hygt::num_parameters(log2_n, rounds));
  for (double& a : angles) a = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  if (!with_permutation) return hygt::HyGTModel(log2_n, rounds, std::move(angles));
  const std::size_t n = std::size_t{1} << log2_n;
  std::vector<std::uint16_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint16_t>(i);
  for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return hygt::HyGTModel(log2_n, rounds, std::move(angles), std::move(perm));
}

// Random symmetric positive semi-definite matrix A^T A (+ optional ridge).
inline hygt::Matrix random_psd(std::size_t n, hygt::Rng& rng, double ridge = 0.0) {
  hygt::Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  hygt::Matrix psd = hygt::multiply(hygt::transposed(a), a);
  for (std::size_t i = 0; i < n; ++i) psd(i, i) += ridge;
  return psd;
}

}  // namespace oracle
