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

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hygt/errors.hpp"
#include "hygt/matrix.hpp"

namespace hygt {

// Binary formats are little-endian regardless of host order; each scalar is
// written byte by byte.

inline void write_u8(std::ostream& os, std::uint8_t v) {
  os.put(static_cast<char>(v));
}

inline void write_u16(std::ostream& os, std::uint16_t v) {
  os.put(static_cast<char>(v & 0xFF));
  os.put(static_cast<char>((v >> 8) & 0xFF));
}

inline void write_u32(std::ostream& os, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void write_u64(std::ostream& os, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

inline void write_f32(std::ostream& os, float v) {
  write_u32(os, std::bit_cast<std::uint32_t>(v));
}

inline void write_f64(std::ostream& os, double v) {
  write_u64(os, std::bit_cast<std::uint64_t>(v));
}

inline std::uint8_t read_u8(std::istream& is) {
  const int c = is.get();
  if (c == EOF) throw IoError("unexpected end of file");
  return static_cast<std::uint8_t>(c);
}

inline std::uint16_t read_u16(std::istream& is) {
  const std::uint16_t lo = read_u8(is);
  const std::uint16_t hi = read_u8(is);
  return static_cast<std::uint16_t>(lo | (hi << 8));
}

inline std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(read_u8(is)) << (8 * i);
  return v;
}

inline std::uint64_t read_u64(std::istream& is) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(read_u8(is)) << (8 * i);
  return v;
}

inline float read_f32(std::istream& is) { return std::bit_cast<float>(read_u32(is)); }
inline double read_f64(std::istream& is) { return std::bit_cast<double>(read_u64(is)); }

inline void write_magic(std::ostream& os, const char (&magic)[5]) {
  os.write(magic, 4);
}

inline void expect_magic(std::istream& is, const char (&magic)[5], const std::string& what) {
  char buf[4];
  is.read(buf, 4);
  if (is.gcount() != 4 || buf[0] != magic[0] || buf[1] != magic[1] || buf[2] != magic[2] ||
      buf[3] != magic[3])
    throw IoError("bad magic: not a " + what + " file");
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for writing: " + path);
  return os;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);
  return is;
}

/// Plain-text matrix: one row per line, 17 significant digits per value.
inline void write_matrix_text(std::ostream& os, const Matrix& a) {
  char buf[64];
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < a.n(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j) os.put(' ');
      os << buf;
    }
    os.put('\n');
  }
}

inline Matrix read_matrix_text(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("matrix text: no rows");
  const std::size_t n = rows.size();
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw IoError("matrix text: not square");
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rows[i][j];
  }
  return a;
}

}  // namespace hygt
