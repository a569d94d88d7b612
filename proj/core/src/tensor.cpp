// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/tensor.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace slicedet {

namespace {

void put_u32_le(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {
      static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
      static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
    throw std::runtime_error("tensor stream truncated in header");
  }
  return static_cast<std::uint32_t>(bytes[0]) |
         (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

void put_f64_le(std::ostream& out, double v) {
  static_assert(std::numeric_limits<double>::is_iec559);
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int i = 0; i < 8; ++i)
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

double get_f64_le(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw std::runtime_error("tensor stream truncated in payload");
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i)
    bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

Tensor3::Tensor3(int channels, int height, int width, double fill)
    : channels_(channels), height_(height), width_(width) {
  if (channels <= 0 || height <= 0 || width <= 0) {
    throw std::invalid_argument("tensor dimensions must be positive");
  }
  data_.assign(
      static_cast<std::size_t>(channels) * height * width, fill);
}

void write_tensor(const Tensor3& t, std::ostream& out) {
  out.write("T3", 2);
  put_u32_le(out, static_cast<std::uint32_t>(t.channels()));
  put_u32_le(out, static_cast<std::uint32_t>(t.height()));
  put_u32_le(out, static_cast<std::uint32_t>(t.width()));
  for (double v : t.data()) put_f64_le(out, v);
  if (!out) throw std::runtime_error("tensor write failed");
}

Tensor3 read_tensor(std::istream& in) {
  char magic[2];
  if (!in.read(magic, 2) || magic[0] != 'T' || magic[1] != '3') {
    throw std::runtime_error("bad tensor magic, expected \"T3\"");
  }
  const std::uint32_t c = get_u32_le(in);
  const std::uint32_t h = get_u32_le(in);
  const std::uint32_t w = get_u32_le(in);
  if (c == 0 || h == 0 || w == 0 || c > (1u << 20) || h > (1u << 20) ||
      w > (1u << 20)) {
    throw std::runtime_error("tensor header has implausible dimensions");
  }
  Tensor3 t(static_cast<int>(c), static_cast<int>(h), static_cast<int>(w));
  for (double& v : t.data()) v = get_f64_le(in);
  return t;
}

void save_tensor(const Tensor3& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_tensor(t, out);
}

Tensor3 load_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_tensor(in);
}

}  // namespace slicedet
