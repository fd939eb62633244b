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
#include <span>
#include <vector>

#include "hygt/givens.hpp"
#include "hygt/hypercube.hpp"
#include "hygt/matrix.hpp"
#include "hygt/model.hpp"

namespace hygt {

/// One parallel-rotation pass: the composition of pairs() disjoint
/// butterflies. The pairs are disjoint, so application order within the pass
/// does not matter.
inline std::vector<double> apply_pass(std::vector<double> x, const PassIndexing& idx,
                                      std::span<const double> thetas) {
  validate_pair_cover(idx, x.size());
  if (thetas.size() != idx.pairs())
    throw ArgumentError("apply_pass: need one angle per index pair");
  for (std::size_t k = 0; k < idx.pairs(); ++k)
    apply_butterfly_inplace(x, {idx.m[k], idx.n[k], thetas[k]});
  return x;
}

namespace detail {

// Unchecked pass application; `dir` = +1 forward, -1 inverse (negated angles).
inline void run_passes(const HyGTModel& model, std::span<double> x, int dir) {
  const std::size_t half = model.pairs_per_pass();
  const int log2_n = model.log2_n();
  const bool fwd = dir > 0;
  for (int step = 0; step < model.rounds() * log2_n; ++step) {
    const int r = fwd ? step / log2_n : model.rounds() - 1 - step / log2_n;
    const int p = fwd ? step % log2_n : log2_n - 1 - step % log2_n;
    const std::uint32_t k = 1u << p;
    const std::size_t base = model.angle_index(r, p, 0);
    for (std::uint32_t j = 0; j < half; ++j) {
      const std::uint32_t m = j + (j & (0u - k));
      const std::uint32_t n = m + k;
      const double t = fwd ? model.angles()[base + j] : -model.angles()[base + j];
      const double c = std::cos(t);
      const double s = std::sin(t);
      const double a = x[m];
      const double b = x[n];
      x[m] = c * a + s * b;
      x[n] = c * b - s * a;
    }
  }
}

}  // namespace detail

/// Full forward transform: all rounds and passes in order, then the sorting
/// permutation if present (out[i] = pre[perm[i]]).
inline std::vector<double> forward(const HyGTModel& model, std::vector<double> x) {
  if (x.size() != model.dimension()) throw ArgumentError("forward: dimension mismatch");
  detail::run_passes(model, x, +1);
  if (model.permutation()) {
    const auto& perm = *model.permutation();
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[perm[i]];
    return y;
  }
  return x;
}

/// Inverse transform: undoes the permutation, then applies every pass in
/// reverse order with negated angles.
inline std::vector<double> inverse(const HyGTModel& model, std::vector<double> y) {
  if (y.size() != model.dimension()) throw ArgumentError("inverse: dimension mismatch");
  if (model.permutation()) {
    const auto& perm = *model.permutation();
    std::vector<double> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[perm[i]] = y[i];
    y = std::move(x);
  }
  detail::run_passes(model, y, -1);
  return y;
}

/// Materializes the transform as a dense matrix (column j = forward(e_j)),
/// mainly for analysis and testing. The result is orthogonal.
inline Matrix to_matrix(const HyGTModel& model) {
  const std::size_t n = model.dimension();
  if (n > 4096) throw ArgumentError("to_matrix: dimension capped at 4096");
  Matrix t(n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    detail::run_passes(model, e, +1);
    if (model.permutation()) {
      const auto& perm = *model.permutation();
      for (std::size_t i = 0; i < n; ++i) t(i, j) = e[perm[i]];
    } else {
      for (std::size_t i = 0; i < n; ++i) t(i, j) = e[i];
    }
  }
  return t;
}

}  // namespace hygt
