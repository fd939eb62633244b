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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hygt/errors.hpp"
#include "hygt/fixedpoint.hpp"
#include "hygt/io.hpp"
#include "hygt/model.hpp"

namespace hygt {

/// Per-class transform set sharing one dimension and one parameter
/// representation: float64 angles (angle_bits = 0) or quantized codes stored
/// one byte each (angle_bits in [1, 8]). precision_bits is carried along so
/// fixed-point users of a quantized bundle build the matching trig table.
class ModelBundle {
 public:
  ModelBundle(std::vector<HyGTModel> models, int precision_bits = 10)
      : precision_bits_(precision_bits), float_models_(std::move(models)) {
    if (float_models_.empty()) throw ArgumentError("ModelBundle: need at least one class");
    if (float_models_.size() > 0xFFFF) throw ArgumentError("ModelBundle: too many classes");
    for (const auto& m : float_models_) {
      if (m.log2_n() != float_models_.front().log2_n())
        throw ArgumentError("ModelBundle: all classes must share one dimension");
      if (m.rounds() > 255) throw ArgumentError("ModelBundle: rounds capped at 255");
    }
  }

  ModelBundle(std::vector<QuantizedHyGTModel> models, int precision_bits = 10)
      : precision_bits_(precision_bits), quantized_models_(std::move(models)) {
    if (quantized_models_.empty()) throw ArgumentError("ModelBundle: need at least one class");
    if (quantized_models_.size() > 0xFFFF) throw ArgumentError("ModelBundle: too many classes");
    for (const auto& m : quantized_models_) {
      if (m.log2_n() != quantized_models_.front().log2_n())
        throw ArgumentError("ModelBundle: all classes must share one dimension");
      if (m.angle_bits() != quantized_models_.front().angle_bits())
        throw ArgumentError("ModelBundle: all classes must share angle_bits");
      if (m.angle_bits() > 8)
        throw ArgumentError("ModelBundle: serialized codes are one byte, angle_bits <= 8");
      if (m.rounds() > 255) throw ArgumentError("ModelBundle: rounds capped at 255");
    }
  }

  bool quantized() const { return !quantized_models_.empty(); }
  std::size_t class_count() const {
    return quantized() ? quantized_models_.size() : float_models_.size();
  }
  int log2_n() const {
    return quantized() ? quantized_models_.front().log2_n() : float_models_.front().log2_n();
  }
  std::size_t dimension() const { return std::size_t{1} << log2_n(); }
  int angle_bits() const { return quantized() ? quantized_models_.front().angle_bits() : 0; }
  int precision_bits() const { return precision_bits_; }

  const HyGTModel& float_model(std::size_t c) const {
    if (quantized()) throw ArgumentError("ModelBundle: bundle is quantized");
    return float_models_.at(c);
  }
  const QuantizedHyGTModel& quantized_model(std::size_t c) const {
    if (!quantized()) throw ArgumentError("ModelBundle: bundle holds float models");
    return quantized_models_.at(c);
  }

  /// Float-angle view of class c regardless of representation.
  HyGTModel dequantized(std::size_t c) const {
    if (quantized()) return dequantize_model(quantized_models_.at(c));
    return float_models_.at(c);
  }

  int rounds(std::size_t c) const {
    return quantized() ? quantized_models_.at(c).rounds() : float_models_.at(c).rounds();
  }

 private:
  int precision_bits_;
  std::vector<HyGTModel> float_models_;
  std::vector<QuantizedHyGTModel> quantized_models_;
};

// Model container format ("HYGT"), little-endian:
//   magic "HYGT", version u8 = 1, u8 log2_n, u16 class_count,
//   u8 angle_bits (0 = float64 angles), u8 precision_bits,
//   then per class: u8 rounds, u8 has_permutation, the angles in application
//   order (float64 each, or one byte code each when angle_bits > 0), then if
//   has_permutation: N u16 indices.

inline void write_bundle(std::ostream& os, const ModelBundle& bundle) {
  write_magic(os, "HYGT");
  write_u8(os, 1);
  write_u8(os, static_cast<std::uint8_t>(bundle.log2_n()));
  write_u16(os, static_cast<std::uint16_t>(bundle.class_count()));
  write_u8(os, static_cast<std::uint8_t>(bundle.angle_bits()));
  write_u8(os, static_cast<std::uint8_t>(bundle.precision_bits()));
  for (std::size_t c = 0; c < bundle.class_count(); ++c) {
    if (bundle.quantized()) {
      const auto& m = bundle.quantized_model(c);
      write_u8(os, static_cast<std::uint8_t>(m.rounds()));
      write_u8(os, m.permutation() ? 1 : 0);
      for (const std::uint16_t code : m.codes()) write_u8(os, static_cast<std::uint8_t>(code));
      if (m.permutation())
        for (const std::uint16_t p : *m.permutation()) write_u16(os, p);
    } else {
      const auto& m = bundle.float_model(c);
      write_u8(os, static_cast<std::uint8_t>(m.rounds()));
      write_u8(os, m.permutation() ? 1 : 0);
      for (const double a : m.angles()) write_f64(os, a);
      if (m.permutation())
        for (const std::uint16_t p : *m.permutation()) write_u16(os, p);
    }
  }
  if (!os) throw IoError("write_bundle: stream failure");
}

inline void write_bundle(const std::string& path, const ModelBundle& bundle) {
  auto os = open_output(path);
  write_bundle(os, bundle);
}

inline ModelBundle read_bundle(std::istream& is) {
  expect_magic(is, "HYGT", "HYGT model bundle");
  const std::uint8_t version = read_u8(is);
  if (version != 1) throw IoError("read_bundle: unsupported version");
  const int log2_n = read_u8(is);
  const std::uint16_t class_count = read_u16(is);
  const int angle_bits = read_u8(is);
  const int precision_bits = read_u8(is);
  if (log2_n < 1 || log2_n > kMaxLog2N) throw IoError("read_bundle: bad log2_n");
  if (class_count == 0) throw IoError("read_bundle: no classes");
  if (angle_bits > 8) throw IoError("read_bundle: bad angle_bits");
  const std::size_t n = std::size_t{1} << log2_n;

  try {
    if (angle_bits == 0) {
      std::vector<HyGTModel> models;
      models.reserve(class_count);
      for (std::uint16_t c = 0; c < class_count; ++c) {
        const int rounds = read_u8(is);
        const bool has_perm = read_u8(is) != 0;
        std::vector<double> angles(num_parameters(log2_n, rounds));
        for (double& a : angles) a = read_f64(is);
        std::optional<std::vector<std::uint16_t>> perm;
        if (has_perm) {
          perm.emplace(n);
          for (std::uint16_t& p : *perm) p = read_u16(is);
        }
        models.emplace_back(log2_n, rounds, std::move(angles), std::move(perm));
      }
      return ModelBundle(std::move(models), precision_bits);
    }
    std::vector<QuantizedHyGTModel> models;
    models.reserve(class_count);
    for (std::uint16_t c = 0; c < class_count; ++c) {
      const int rounds = read_u8(is);
      const bool has_perm = read_u8(is) != 0;
      std::vector<std::uint16_t> codes(num_parameters(log2_n, rounds));
      for (std::uint16_t& q : codes) q = read_u8(is);
      std::optional<std::vector<std::uint16_t>> perm;
      if (has_perm) {
        perm.emplace(n);
        for (std::uint16_t& p : *perm) p = read_u16(is);
      }
      models.emplace_back(log2_n, rounds, angle_bits, std::move(codes), std::move(perm));
    }
    return ModelBundle(std::move(models), precision_bits);
  } catch (const ArgumentError& e) {
    throw IoError(std::string("read_bundle: ") + e.what());
  }
}

inline ModelBundle read_bundle(const std::string& path) {
  auto is = open_input(path);
  return read_bundle(is);
}

}  // namespace hygt
