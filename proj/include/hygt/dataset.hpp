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
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hygt/errors.hpp"
#include "hygt/hypercube.hpp"
#include "hygt/io.hpp"

namespace hygt {

/// One residual block: a length-N vector plus the class it was assigned to.
struct ResidualBlock {
  std::uint16_t class_id = 0;
  std::vector<double> values;
};

/// Class-labeled residual vectors used for training and evaluation.
class ResidualDataset {
 public:
  ResidualDataset(int log2_n, std::uint16_t class_count, std::vector<ResidualBlock> blocks)
      : log2_n_(log2_n), class_count_(class_count), blocks_(std::move(blocks)) {
    if (log2_n_ < 1 || log2_n_ > kMaxLog2N)
      throw ArgumentError("ResidualDataset: log2_n out of range [1, 16]");
    if (class_count_ == 0) throw ArgumentError("ResidualDataset: need at least one class");
    const std::size_t n = dimension();
    for (const auto& b : blocks_) {
      if (b.values.size() != n) throw ArgumentError("ResidualDataset: block length mismatch");
      if (b.class_id >= class_count_) throw ArgumentError("ResidualDataset: class id out of range");
    }
  }

  int log2_n() const { return log2_n_; }
  std::size_t dimension() const { return std::size_t{1} << log2_n_; }
  std::uint16_t class_count() const { return class_count_; }
  const std::vector<ResidualBlock>& blocks() const { return blocks_; }

  std::size_t count_of_class(std::uint16_t c) const {
    std::size_t k = 0;
    for (const auto& b : blocks_) k += (b.class_id == c);
    return k;
  }

 private:
  int log2_n_;
  std::uint16_t class_count_;
  std::vector<ResidualBlock> blocks_;
};

// Dataset container format ("RBLK"), little-endian:
//   magic "RBLK", version u8 = 1, u8 log2_n, u16 class_count, u32 block_count,
//   then per block: u16 class_id followed by N float32 values in raster order.

inline void write_rblk(std::ostream& os, const ResidualDataset& ds) {
  if (ds.blocks().size() > 0xFFFFFFFFull) throw ArgumentError("write_rblk: too many blocks");
  write_magic(os, "RBLK");
  write_u8(os, 1);
  write_u8(os, static_cast<std::uint8_t>(ds.log2_n()));
  write_u16(os, ds.class_count());
  write_u32(os, static_cast<std::uint32_t>(ds.blocks().size()));
  for (const auto& b : ds.blocks()) {
    write_u16(os, b.class_id);
    for (const double v : b.values) write_f32(os, static_cast<float>(v));
  }
  if (!os) throw IoError("write_rblk: stream failure");
}

inline void write_rblk(const std::string& path, const ResidualDataset& ds) {
  auto os = open_output(path);
  write_rblk(os, ds);
}

inline ResidualDataset read_rblk(std::istream& is) {
  expect_magic(is, "RBLK", "RBLK dataset");
  const std::uint8_t version = read_u8(is);
  if (version != 1) throw IoError("read_rblk: unsupported version");
  const int log2_n = read_u8(is);
  const std::uint16_t class_count = read_u16(is);
  const std::uint32_t block_count = read_u32(is);
  if (log2_n < 1 || log2_n > kMaxLog2N) throw IoError("read_rblk: bad log2_n");
  const std::size_t n = std::size_t{1} << log2_n;
  std::vector<ResidualBlock> blocks;
  blocks.reserve(std::min<std::size_t>(block_count, std::size_t{1} << 20));
  for (std::uint32_t k = 0; k < block_count; ++k) {
    ResidualBlock b;
    b.class_id = read_u16(is);
    b.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) b.values[i] = static_cast<double>(read_f32(is));
    blocks.push_back(std::move(b));
  }
  try {
    return ResidualDataset(log2_n, class_count, std::move(blocks));
  } catch (const ArgumentError& e) {
    throw IoError(std::string("read_rblk: ") + e.what());
  }
}

inline ResidualDataset read_rblk(const std::string& path) {
  auto is = open_input(path);
  return read_rblk(is);
}

}  // namespace hygt
