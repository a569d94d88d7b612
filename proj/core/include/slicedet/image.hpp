// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_IMAGE_HPP_
#define SLICEDET_IMAGE_HPP_

#include <cstdint>
#include <vector>

namespace slicedet {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb&) const = default;
};

// Interleaved 8-bit RGB raster, row-major, no padding.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, Rgb fill = {0, 0, 0});

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb at(int x, int y) const {
    const std::size_t i = index(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(int x, int y, Rgb c) {
    const std::size_t i = index(x, y);
    data_[i] = c.r;
    data_[i + 1] = c.g;
    data_[i + 2] = c.b;
  }

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * width_ + x) * 3;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Crop of [x, x+w) x [y, y+h); the window must lie inside the image.
RasterImage crop_image(const RasterImage& img, int x, int y, int w, int h);

// Nearest-neighbor resample: output pixel d reads source index
// floor(d * src_extent / dst_extent) per axis.
RasterImage resize_image_nearest(const RasterImage& img, int out_width,
                                 int out_height);

}  // namespace slicedet

#endif  // SLICEDET_IMAGE_HPP_
