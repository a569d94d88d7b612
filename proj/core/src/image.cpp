// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/image.hpp"

#include <cstring>
#include <stdexcept>
#include <string>

namespace slicedet {

RasterImage::RasterImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
  data_.resize(static_cast<std::size_t>(width) * height * 3);
  if (fill.r || fill.g || fill.b) {
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) set(x, y, fill);
  }
}

RasterImage crop_image(const RasterImage& img, int x, int y, int w, int h) {
  if (w <= 0 || h <= 0 || x < 0 || y < 0 || x + w > img.width() ||
      y + h > img.height()) {
    throw std::invalid_argument("crop window out of bounds");
  }
  RasterImage out(w, h);
  const std::size_t row_bytes = static_cast<std::size_t>(w) * 3;
  for (int row = 0; row < h; ++row) {
    const std::size_t src =
        (static_cast<std::size_t>(y + row) * img.width() + x) * 3;
    const std::size_t dst = static_cast<std::size_t>(row) * row_bytes;
    std::memcpy(out.data().data() + dst, img.data().data() + src, row_bytes);
  }
  return out;
}

RasterImage resize_image_nearest(const RasterImage& img, int out_width,
                                 int out_height) {
  if (out_width <= 0 || out_height <= 0) {
    throw std::invalid_argument("resize target must be positive");
  }
  RasterImage out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    const int sy = static_cast<int>(static_cast<std::int64_t>(y) *
                                    img.height() / out_height);
    for (int x = 0; x < out_width; ++x) {
      const int sx = static_cast<int>(static_cast<std::int64_t>(x) *
                                      img.width() / out_width);
      out.set(x, y, img.at(sx, sy));
    }
  }
  return out;
}

}  // namespace slicedet
