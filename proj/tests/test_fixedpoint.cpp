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
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "hygt/fixedpoint.hpp"
#include "hygt/transform.hpp"
#include "oracles.hpp"

using namespace hygt;

TEST_CASE("trig table entries at exact grid points") {
  const TrigTable t(8, 10);
  CHECK(t.size() == 256);
  CHECK(t.cos_entry(0) == 1024);
  CHECK(t.sin_entry(0) == 0);
  CHECK(t.cos_entry(64) == 0);  // quarter turn
  CHECK(t.sin_entry(64) == 1024);
  CHECK(t.cos_entry(32) == 724);  // round(cos(pi/4) * 1024)
  CHECK(t.cos_entry(128) == -1024);
}

TEST_CASE("trig table entries fit the advertised width") {
  for (const int b : {2, 8, 12}) {
    for (const int p : {4, 10, 15}) {
      const TrigTable t(b, p);
      const std::int32_t limit = std::int32_t{1} << p;  // |entry| <= 2^p < 2^(p+1)
      for (std::size_t q = 0; q < t.size(); ++q) {
        CHECK(std::abs(t.cos_entry(q)) <= limit);
        CHECK(std::abs(t.sin_entry(q)) <= limit);
      }
    }
  }
}

TEST_CASE("sine is the quarter-turn shift of cosine") {
  for (const int b : {2, 4, 8, 10}) {
    const TrigTable t(b, 10);
    const std::size_t size = t.size();
    const std::size_t shift = size / 4;
    for (std::size_t q = 0; q < size; ++q)
      CHECK(t.sin_entry(q) == t.cos_entry((q + size - shift) % size));
  }
}

TEST_CASE("table construction validates widths") {
  CHECK_THROWS_AS(TrigTable(0, 10), ArgumentError);
  CHECK_THROWS_AS(TrigTable(13, 10), ArgumentError);
  CHECK_THROWS_AS(TrigTable(8, 3), ArgumentError);
  CHECK_THROWS_AS(TrigTable(8, 16), ArgumentError);
  CHECK_NOTHROW(build_trig_table(8, 10));
}

TEST_CASE("angle quantization wraps into code space") {
  const HyGTModel model(2, 1, {0.0, std::numbers::pi / 2, -std::numbers::pi / 4, 0.1});
  const auto q = quantize_model(model, 8);
  CHECK(q.codes()[0] == 0);
  CHECK(q.codes()[1] == 64);
  CHECK(q.codes()[2] == 224);  // modular wrap of -32
}

TEST_CASE("quantization error is below half a grid step") {
  const auto model = oracle::random_model(3, 2, 77);
  for (const int b : {4, 8, 12}) {
    const auto q = quantize_model(model, b);
    const auto back = dequantize_model(q);
    const double bound = std::numbers::pi / static_cast<double>(1 << b);
    for (std::size_t i = 0; i < model.angles().size(); ++i) {
      double d = std::remainder(model.angles()[i] - back.angles()[i], 2.0 * std::numbers::pi);
      CHECK(std::abs(d) <= bound + 1e-12);
    }
  }
}

TEST_CASE("zero codes pass integers through exactly") {
  const QuantizedHyGTModel model(3, 2, 8, std::vector<std::uint16_t>(24, 0));
  const TrigTable table(8, 10);
  const std::vector<std::int64_t> x{5, -7, 1000, 0, -1, 12, 999, -1024};
  CHECK(forward_fixed(model, table, x) == x);
  CHECK(inverse_fixed(model, table, x) == x);
}

TEST_CASE("quarter-turn butterfly is exact in integer arithmetic") {
  const QuantizedHyGTModel model(1, 1, 8, {64});
  const TrigTable table(8, 10);
  const std::vector<std::int64_t> x{100, 7};
  const auto y = forward_fixed(model, table, x);
  CHECK(y == std::vector<std::int64_t>{7, -100});
  CHECK(inverse_fixed(model, table, y) == x);
}

TEST_CASE("fixed transform tracks the float transform of the same codes") {
  const auto model = oracle::random_model(4, 2, 88);
  const auto q = quantize_model(model, 8);
  const auto dq = dequantize_model(q);
  const TrigTable table(8, 10);

  Rng rng(89);
  std::int64_t max_err = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> x(16);
    std::vector<double> xf(16);
    for (std::size_t i = 0; i < 16; ++i) {
      x[i] = static_cast<std::int64_t>(rng.below(2049)) - 1024;
      xf[i] = static_cast<double>(x[i]);
    }
    const auto yi = forward_fixed(q, table, x);
    const auto yf = forward(dq, xf);
    for (std::size_t i = 0; i < 16; ++i) {
      const std::int64_t err = std::abs(yi[i] - std::llround(yf[i]));
      max_err = std::max(max_err, err);
    }
  }
  // Regression bound, seed-pinned; well under the worst case of one rounding
  // step per pass (N * log2(N) * R butterflies total).
  CHECK(max_err <= 4);
}

TEST_CASE("fixed/float agreement grows mildly with depth") {
  // Deepest supported smoke configuration: N = 64, five rounds.
  const auto model = oracle::random_model(6, 5, 92);
  const auto q = quantize_model(model, 8);
  const auto dq = dequantize_model(q);
  const TrigTable table(8, 10);

  Rng rng(93);
  std::int64_t max_err = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::int64_t> x(64);
    std::vector<double> xf(64);
    for (std::size_t i = 0; i < 64; ++i) {
      x[i] = static_cast<std::int64_t>(rng.below(2049)) - 1024;
      xf[i] = static_cast<double>(x[i]);
    }
    const auto yi = forward_fixed(q, table, x);
    const auto yf = forward(dq, xf);
    for (std::size_t i = 0; i < 64; ++i)
      max_err = std::max<std::int64_t>(max_err, std::abs(yi[i] - std::llround(yf[i])));
  }
  // Seed-pinned; roughly linear in total pass count (30 passes here against
  // 8 in the N=16 R=2 case above).
  CHECK(max_err <= 7);
}

TEST_CASE("fixed round trip error stays bounded") {
  const auto model = oracle::random_model(4, 2, 90, true);
  const auto q = quantize_model(model, 8);
  const TrigTable table(8, 10);

  Rng rng(91);
  std::int64_t max_err = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> x(16);
    for (auto& v : x) v = static_cast<std::int64_t>(rng.below(2049)) - 1024;
    const auto y = inverse_fixed(q, table, forward_fixed(q, table, x));
    for (std::size_t i = 0; i < 16; ++i)
      max_err = std::max(max_err, std::abs(y[i] - x[i]));
  }
  CHECK(max_err <= 4);  // seed-pinned regression bound
}

TEST_CASE("fixed transform enforces its input range") {
  const QuantizedHyGTModel model(1, 1, 8, {0});
  const TrigTable table(8, 10);
  CHECK_THROWS_AS(forward_fixed(model, table, {std::int64_t{1} << 21, 0}), ArgumentError);
  CHECK_THROWS_AS(forward_fixed(model, table, {0}), ArgumentError);
  const TrigTable other(6, 10);
  CHECK_THROWS_AS(forward_fixed(model, other, {1, 2}), ArgumentError);
}

TEST_CASE("memory footprint reproduces the published storage ratios") {
  // 4x4 blocks: N = 16.
  CHECK(memory_footprint(TransformKind::klt, 4, 1, 1) == 256);
  CHECK(memory_footprint(TransformKind::hygt, 4, 2, 1) == 64);
  const double r44_h2 = 256.0 / 64.0;
  CHECK(r44_h2 == 4.0);

  // 8x8 blocks: N = 64.
  CHECK(memory_footprint(TransformKind::klt, 6, 1, 1) == 4096);
  CHECK(memory_footprint(TransformKind::hygt, 6, 3, 1) == 576);
  CHECK_THAT(4096.0 / 576.0, Catch::Matchers::WithinAbs(7.1, 0.05));

  // Both block sizes stored together.
  const double combined = (256.0 + 4096.0) / (64.0 + 576.0);
  CHECK_THAT(combined, Catch::Matchers::WithinAbs(6.8, 0.05));

  // Scales linearly in the number of stored transforms.
  CHECK(memory_footprint(TransformKind::hygt, 6, 3, 105) == 105 * 576);
  CHECK_THROWS_AS(memory_footprint(TransformKind::klt, 0, 1, 1), ArgumentError);
}
