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
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "hygt/errors.hpp"
#include "hygt/model.hpp"

namespace hygt {

/// Shared sine/cosine lookup table for quantized angle codes. Code q stands
/// for the angle 2*pi*q / 2^angle_bits; entries are the trig values scaled by
/// 2^precision_bits and rounded, so each fits a signed (p+2)-bit integer.
/// One table serves every model with the same widths, so its footprint is
/// not counted against any particular transform.
class TrigTable {
 public:
  TrigTable(int angle_bits, int precision_bits)
      : angle_bits_(angle_bits), precision_bits_(precision_bits) {
    if (angle_bits < 1 || angle_bits > 12)
      throw ArgumentError("TrigTable: angle_bits out of range [1, 12]");
    if (precision_bits < 4 || precision_bits > 15)
      throw ArgumentError("TrigTable: precision_bits out of range [4, 15]");
    const std::size_t size = std::size_t{1} << angle_bits;
    const double scale = static_cast<double>(std::int64_t{1} << precision_bits);
    cos_.resize(size);
    sin_.resize(size);
    for (std::size_t q = 0; q < size; ++q) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(size);
      cos_[q] = static_cast<std::int32_t>(std::lround(std::cos(a) * scale));
      sin_[q] = static_cast<std::int32_t>(std::lround(std::sin(a) * scale));
    }
  }

  int angle_bits() const { return angle_bits_; }
  int precision_bits() const { return precision_bits_; }
  std::size_t size() const { return cos_.size(); }
  std::int32_t cos_entry(std::size_t code) const { return cos_[code]; }
  std::int32_t sin_entry(std::size_t code) const { return sin_[code]; }

 private:
  int angle_bits_;
  int precision_bits_;
  std::vector<std::int32_t> cos_;
  std::vector<std::int32_t> sin_;
};

inline TrigTable build_trig_table(int angle_bits, int precision_bits) {
  return TrigTable(angle_bits, precision_bits);
}

/// A model whose angles are b-bit codes instead of doubles. Same layout and
/// application order as HyGTModel; with b = 8 each parameter is one byte.
class QuantizedHyGTModel {
 public:
  QuantizedHyGTModel(int log2_n, int rounds, int angle_bits, std::vector<std::uint16_t> codes,
                     std::optional<std::vector<std::uint16_t>> permutation = std::nullopt)
      : log2_n_(log2_n), rounds_(rounds), angle_bits_(angle_bits), codes_(std::move(codes)),
        permutation_(std::move(permutation)) {
    if (log2_n_ < 1 || log2_n_ > kMaxLog2N)
      throw ArgumentError("QuantizedHyGTModel: log2_n out of range [1, 16]");
    if (angle_bits_ < 1 || angle_bits_ > 12)
      throw ArgumentError("QuantizedHyGTModel: angle_bits out of range [1, 12]");
    if (codes_.size() != num_parameters(log2_n_, rounds_))
      throw ArgumentError("QuantizedHyGTModel: code count must be rounds * N * log2(N) / 2");
    const std::uint16_t limit = static_cast<std::uint16_t>((1u << angle_bits_) - 1u);
    for (const std::uint16_t c : codes_)
      if (c > limit) throw ArgumentError("QuantizedHyGTModel: code exceeds 2^angle_bits");
    if (permutation_) validate_permutation(*permutation_, dimension());
  }

  int log2_n() const { return log2_n_; }
  int rounds() const { return rounds_; }
  int angle_bits() const { return angle_bits_; }
  std::size_t dimension() const { return std::size_t{1} << log2_n_; }
  std::size_t pairs_per_pass() const { return dimension() / 2; }
  const std::vector<std::uint16_t>& codes() const { return codes_; }
  const std::optional<std::vector<std::uint16_t>>& permutation() const { return permutation_; }

  std::size_t code_index(int round, int pass, std::size_t pair) const {
    return (static_cast<std::size_t>(round) * log2_n_ + pass) * pairs_per_pass() + pair;
  }

 private:
  int log2_n_;
  int rounds_;
  int angle_bits_;
  std::vector<std::uint16_t> codes_;
  std::optional<std::vector<std::uint16_t>> permutation_;
};

/// Uniform quantization of each angle onto the 2^b-point grid over [0, 2*pi),
/// with wraparound: code = round(theta / (2*pi) * 2^b) mod 2^b. The wrapped
/// error per angle is at most pi / 2^b, and negation (the inverse transform)
/// stays exact in code space.
inline QuantizedHyGTModel quantize_model(const HyGTModel& model, int angle_bits) {
  if (angle_bits < 1 || angle_bits > 12)
    throw ArgumentError("quantize_model: angle_bits out of range [1, 12]");
  const std::int64_t size = std::int64_t{1} << angle_bits;
  std::vector<std::uint16_t> codes(model.angles().size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const double scaled = model.angles()[i] / (2.0 * std::numbers::pi) * static_cast<double>(size);
    std::int64_t q = std::llround(scaled) % size;
    if (q < 0) q += size;
    codes[i] = static_cast<std::uint16_t>(q);
  }
  return QuantizedHyGTModel(model.log2_n(), model.rounds(), angle_bits, std::move(codes),
                            model.permutation());
}

/// Back to a float model: angle = 2*pi*code / 2^b.
inline HyGTModel dequantize_model(const QuantizedHyGTModel& model) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(std::int64_t{1} << model.angle_bits());
  std::vector<double> angles(model.codes().size());
  for (std::size_t i = 0; i < angles.size(); ++i)
    angles[i] = step * static_cast<double>(model.codes()[i]);
  return HyGTModel(model.log2_n(), model.rounds(), std::move(angles), model.permutation());
}

namespace detail {

// Magnitudes are capped so that table products always fit in 64 bits.
inline constexpr std::int64_t kFixedInputLimit = std::int64_t{1} << 20;
inline constexpr std::int64_t kFixedValueLimit = std::int64_t{1} << 46;

inline void check_fixed_input(const std::vector<std::int64_t>& x, std::size_t dimension) {
  if (x.size() != dimension) throw ArgumentError("fixed transform: dimension mismatch");
  for (const std::int64_t v : x)
    if (v > kFixedInputLimit || v < -kFixedInputLimit)
      throw ArgumentError("fixed transform: input magnitude exceeds 2^20");
}

// Integer butterflies for all passes; `fwd` false runs in reverse order with
// negated codes (code' = 2^b - code mod 2^b).
inline void run_passes_fixed(const QuantizedHyGTModel& model, const TrigTable& table,
                             std::vector<std::int64_t>& x, bool fwd) {
  const std::size_t half = model.pairs_per_pass();
  const int log2_n = model.log2_n();
  const std::uint32_t code_mask = (1u << model.angle_bits()) - 1u;
  const int p = table.precision_bits();
  const std::int64_t rnd = std::int64_t{1} << (p - 1);
  for (int step = 0; step < model.rounds() * log2_n; ++step) {
    const int r = fwd ? step / log2_n : model.rounds() - 1 - step / log2_n;
    const int d = fwd ? step % log2_n : log2_n - 1 - step % log2_n;
    const std::uint32_t k = 1u << d;
    const std::size_t base = model.code_index(r, d, 0);
    for (std::uint32_t j = 0; j < half; ++j) {
      const std::uint32_t m = j + (j & (0u - k));
      const std::uint32_t n = m + k;
      std::uint32_t code = model.codes()[base + j];
      if (!fwd) code = (0u - code) & code_mask;
      const std::int64_t c = table.cos_entry(code);
      const std::int64_t s = table.sin_entry(code);
      const std::int64_t a = x[m];
      const std::int64_t b = x[n];
      x[m] = (c * a + s * b + rnd) >> p;
      x[n] = (c * b - s * a + rnd) >> p;
      if (x[m] > kFixedValueLimit || x[m] < -kFixedValueLimit ||
          x[n] > kFixedValueLimit || x[n] < -kFixedValueLimit)
        throw OverflowError("fixed transform: intermediate exceeds 2^46");
    }
  }
}

}  // namespace detail

/// Integer forward transform. Each butterfly is
///   y_m = ( c*x_m + s*x_n + 2^(p-1)) >> p
///   y_n = (-s*x_m + c*x_n + 2^(p-1)) >> p
/// with c, s fetched from the shared table by angle code and an arithmetic
/// right shift. Pass and round order match the float forward() exactly.
inline std::vector<std::int64_t> forward_fixed(const QuantizedHyGTModel& model,
                                               const TrigTable& table,
                                               std::vector<std::int64_t> x) {
  if (table.angle_bits() != model.angle_bits())
    throw ArgumentError("forward_fixed: table/model angle_bits mismatch");
  detail::check_fixed_input(x, model.dimension());
  detail::run_passes_fixed(model, table, x, true);
  if (model.permutation()) {
    const auto& perm = *model.permutation();
    std::vector<std::int64_t> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[perm[i]];
    return y;
  }
  return x;
}

/// Integer inverse: permutation undone first, then reverse pass order with
/// negated codes. Round-trip is near-exact, not exact; each integer butterfly
/// is only approximately orthogonal because of the rounding shift.
inline std::vector<std::int64_t> inverse_fixed(const QuantizedHyGTModel& model,
                                               const TrigTable& table,
                                               std::vector<std::int64_t> y) {
  if (table.angle_bits() != model.angle_bits())
    throw ArgumentError("inverse_fixed: table/model angle_bits mismatch");
  detail::check_fixed_input(y, model.dimension());
  if (model.permutation()) {
    const auto& perm = *model.permutation();
    std::vector<std::int64_t> x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[perm[i]] = y[i];
    y = std::move(x);
  }
  detail::run_passes_fixed(model, table, y, false);
  return y;
}

enum class TransformKind { klt, hygt };

/// Storage cost in scalar units: one unit per matrix entry for a KLT
/// (num_transforms * N^2), one unit per angle for a HyGT
/// (num_transforms * R * N * log2(N) / 2). The shared trig table is excluded.
inline std::size_t memory_footprint(TransformKind kind, int log2_n, int rounds,
                                    int num_transforms) {
  if (log2_n < 1 || rounds < 1 || num_transforms < 1)
    throw ArgumentError("memory_footprint: arguments must be >= 1");
  const std::size_t n = std::size_t{1} << log2_n;
  if (kind == TransformKind::klt) return static_cast<std::size_t>(num_transforms) * n * n;
  return static_cast<std::size_t>(num_transforms) * num_parameters(log2_n, rounds);
}

}  // namespace hygt
