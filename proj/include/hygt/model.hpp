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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hygt/errors.hpp"
#include "hygt/hypercube.hpp"

namespace hygt {

/// Number of rotation angles of a model: rounds * N * log2(N) / 2.
inline std::size_t num_parameters(int log2_n, int rounds) {
  if (log2_n < 1 || rounds < 1)
    throw ArgumentError("num_parameters: log2_n and rounds must be >= 1");
  const std::size_t n = std::size_t{1} << log2_n;
  return static_cast<std::size_t>(rounds) * n * static_cast<std::size_t>(log2_n) / 2;
}

/// Throws unless `perm` is a bijection on {0, ..., dimension-1}.
inline void validate_permutation(const std::vector<std::uint16_t>& perm, std::size_t dimension) {
  if (perm.size() != dimension) throw ArgumentError("permutation: wrong length");
  std::vector<bool> seen(dimension, false);
  for (const std::uint16_t p : perm) {
    if (p >= dimension || seen[p]) throw ArgumentError("permutation: not a bijection");
    seen[p] = true;
  }
}

/// Parameters of one transform: `rounds` rounds of log2(N) hypercube passes,
/// one angle per butterfly, plus an optional final coefficient permutation.
/// Angles are stored flat in application order (round, then pass, then pair
/// index as produced by hypercube_indices). Immutable after construction and
/// safe to share across threads.
class HyGTModel {
 public:
  HyGTModel(int log2_n, int rounds, std::vector<double> angles,
            std::optional<std::vector<std::uint16_t>> permutation = std::nullopt)
      : log2_n_(log2_n), rounds_(rounds), angles_(std::move(angles)),
        permutation_(std::move(permutation)) {
    if (log2_n_ < 1 || log2_n_ > kMaxLog2N)
      throw ArgumentError("HyGTModel: log2_n out of range [1, 16]");
    if (angles_.size() != num_parameters(log2_n_, rounds_))
      throw ArgumentError("HyGTModel: angle count must be rounds * N * log2(N) / 2");
    if (permutation_) validate_permutation(*permutation_, dimension());
  }

  /// All-zero angles: the identity transform.
  static HyGTModel zeros(int log2_n, int rounds) {
    return HyGTModel(log2_n, rounds, std::vector<double>(num_parameters(log2_n, rounds), 0.0));
  }

  int log2_n() const { return log2_n_; }
  int rounds() const { return rounds_; }
  std::size_t dimension() const { return std::size_t{1} << log2_n_; }
  std::size_t pairs_per_pass() const { return dimension() / 2; }
  std::size_t pass_count() const { return static_cast<std::size_t>(rounds_) * log2_n_; }

  const std::vector<double>& angles() const { return angles_; }

  std::size_t angle_index(int round, int pass, std::size_t pair) const {
    return (static_cast<std::size_t>(round) * log2_n_ + pass) * pairs_per_pass() + pair;
  }
  double angle(int round, int pass, std::size_t pair) const {
    return angles_[angle_index(round, pass, pair)];
  }

  const std::optional<std::vector<std::uint16_t>>& permutation() const { return permutation_; }

  /// Copy of this model with a sorting pass attached.
  HyGTModel with_permutation(std::vector<std::uint16_t> perm) const {
    return HyGTModel(log2_n_, rounds_, angles_, std::move(perm));
  }

 private:
  int log2_n_;
  int rounds_;
  std::vector<double> angles_;
  std::optional<std::vector<std::uint16_t>> permutation_;
};

}  // namespace hygt
