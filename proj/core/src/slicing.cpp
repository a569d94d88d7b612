// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slicedet {

namespace {

// Tile origins along one axis. The loop pushes an origin only while the tile
// ends strictly inside the image, so the clamped final origin never collides
// with an earlier one.
std::vector<int> axis_origins(int extent, int tile_size, int stride) {
  if (extent <= tile_size) return {0};
  std::vector<int> origins;
  for (int o = 0;; o += stride) {
    if (o + tile_size >= extent) {
      origins.push_back(extent - tile_size);
      break;
    }
    origins.push_back(o);
  }
  return origins;
}

}  // namespace

int slice_stride(int tile_size, double overlap_ratio) {
  // The epsilon keeps exact products like 0.3 * 640 from flooring one short.
  const int overlap = static_cast<int>(
      std::floor(overlap_ratio * tile_size + 1e-9));
  return tile_size - overlap;
}

SlicePlan compute_slice_plan(int image_width, int image_height, int tile_size,
                             double overlap_ratio) {
  if (image_width <= 0 || image_height <= 0) {
    throw std::invalid_argument("image dimensions must be positive");
  }
  if (tile_size < 1) {
    throw std::invalid_argument("tile_size must be >= 1");
  }
  if (!(overlap_ratio >= 0.0 && overlap_ratio < 1.0)) {
    throw std::invalid_argument("overlap_ratio must be in [0, 1)");
  }

  const int stride = slice_stride(tile_size, overlap_ratio);
  const std::vector<int> xs = axis_origins(image_width, tile_size, stride);
  const std::vector<int> ys = axis_origins(image_height, tile_size, stride);

  SlicePlan plan;
  plan.image_width = image_width;
  plan.image_height = image_height;
  plan.tile_size = tile_size;
  plan.overlap_ratio = overlap_ratio;
  plan.rows = static_cast<int>(ys.size());
  plan.cols = static_cast<int>(xs.size());
  plan.tiles.reserve(xs.size() * ys.size());
  const int tile_w = std::min(tile_size, image_width);
  const int tile_h = std::min(tile_size, image_height);
  for (int r = 0; r < plan.rows; ++r) {
    for (int c = 0; c < plan.cols; ++c) {
      plan.tiles.push_back({r, c, xs[c], ys[r], tile_w, tile_h});
    }
  }
  return plan;
}

BoundingBox remap_box(const BoundingBox& box, const TileSpec& tile,
                      double tolerance) {
  const double w = tile.width;
  const double h = tile.height;
  if (box.x1 < -tolerance || box.y1 < -tolerance || box.x2 > w + tolerance ||
      box.y2 > h + tolerance) {
    throw std::invalid_argument(
        "box exceeds tile bounds beyond tolerance " +
        std::to_string(tolerance));
  }
  BoundingBox clipped{std::clamp(box.x1, 0.0, w), std::clamp(box.y1, 0.0, h),
                      std::clamp(box.x2, 0.0, w), std::clamp(box.y2, 0.0, h)};
  return {clipped.x1 + tile.origin_x, clipped.y1 + tile.origin_y,
          clipped.x2 + tile.origin_x, clipped.y2 + tile.origin_y};
}

BoundingBox inverse_remap_box(const BoundingBox& box, const TileSpec& tile) {
  return {box.x1 - tile.origin_x, box.y1 - tile.origin_y,
          box.x2 - tile.origin_x, box.y2 - tile.origin_y};
}

RasterImage extract_tile(const RasterImage& img, const TileSpec& tile) {
  return crop_image(img, tile.origin_x, tile.origin_y, tile.width,
                    tile.height);
}

}  // namespace slicedet
