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
#include <vector>

#include "hygt/errors.hpp"

namespace hygt {

inline constexpr int kMaxLog2N = 16;

/// Index pairs of one parallel rotation pass. Invariants: m[k] < n[k] for all
/// k, and the union of both vectors is exactly {0, ..., N-1} (each coordinate
/// is touched by exactly one rotation of the pass, so the N/2 rotations
/// commute and can run concurrently).
struct PassIndexing {
  std::vector<std::uint32_t> m;
  std::vector<std::uint32_t> n;

  std::size_t pairs() const { return m.size(); }
  std::size_t dimension() const { return 2 * m.size(); }
};

/// Throws ArgumentError unless `idx` partitions {0, ..., dimension-1} into
/// ordered disjoint pairs.
inline void validate_pair_cover(const PassIndexing& idx, std::size_t dimension) {
  if (idx.m.size() != idx.n.size() || 2 * idx.m.size() != dimension)
    throw ArgumentError("pass indexing: wrong number of pairs");
  std::vector<bool> seen(dimension, false);
  for (std::size_t k = 0; k < idx.m.size(); ++k) {
    const std::uint32_t m = idx.m[k];
    const std::uint32_t n = idx.n[k];
    if (m >= n) throw ArgumentError("pass indexing: pairs must be stored with m < n");
    if (n >= dimension) throw ArgumentError("pass indexing: index out of range");
    if (seen[m] || seen[n]) throw ArgumentError("pass indexing: index used twice");
    seen[m] = seen[n] = true;
  }
}

/// Index pairs of hypercube pass `pass` in dimension N = 2^log2_n: pair k of
/// pass d joins the two indices that differ exactly in bit d. Computed with
/// the mask trick m_j = j + (j & -k), n_j = m_j + k where k = 2^pass, so the
/// schedule needs no storage.
inline PassIndexing hypercube_indices(int log2_n, int pass) {
  if (log2_n < 1 || log2_n > kMaxLog2N)
    throw ArgumentError("hypercube_indices: log2_n out of range [1, 16]");
  if (pass < 0 || pass >= log2_n)
    throw ArgumentError("hypercube_indices: pass out of range [0, log2_n)");

  const std::uint32_t half = 1u << (log2_n - 1);
  const std::uint32_t k = 1u << pass;
  PassIndexing idx;
  idx.m.resize(half);
  idx.n.resize(half);
  for (std::uint32_t j = 0; j < half; ++j) {
    // j & -k clears the low `pass` bits; unsigned wraparound matches the
    // two's complement form.
    idx.m[j] = j + (j & (0u - k));
    idx.n[j] = idx.m[j] + k;
  }
  return idx;
}

}  // namespace hygt
