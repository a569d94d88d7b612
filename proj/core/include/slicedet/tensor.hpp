// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_TENSOR_HPP_
#define SLICEDET_TENSOR_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace slicedet {

// Dense CHW tensor of doubles, the exchange type for the numeric kernels.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(int channels, int height, int width, double fill = 0.0);

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t size() const { return data_.size(); }

  double operator()(int c, int h, int w) const { return data_[index(c, h, w)]; }
  double& operator()(int c, int h, int w) { return data_[index(c, h, w)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_shape(const Tensor3& other) const {
    return channels_ == other.channels_ && height_ == other.height_ &&
           width_ == other.width_;
  }
  bool operator==(const Tensor3&) const = default;

 private:
  std::size_t index(int c, int h, int w) const {
    return (static_cast<std::size_t>(c) * height_ + h) * width_ + w;
  }

  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

// Flat binary wire format: magic "T3", then channels/height/width as
// little-endian uint32, then the payload as little-endian float64 in
// C-then-H-then-W order. Lossless roundtrip for every finite value.
void write_tensor(const Tensor3& t, std::ostream& out);
Tensor3 read_tensor(std::istream& in);
void save_tensor(const Tensor3& t, const std::string& path);
Tensor3 load_tensor(const std::string& path);

}  // namespace slicedet

#endif  // SLICEDET_TENSOR_HPP_
