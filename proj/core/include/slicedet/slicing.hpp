// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_SLICING_HPP_
#define SLICEDET_SLICING_HPP_

#include <vector>

#include "slicedet/geometry.hpp"
#include "slicedet/image.hpp"

namespace slicedet {

// One tile of an overlapping slice grid. Tiles are full tile_size squares
// except when the image itself is smaller than the tile on an axis.
struct TileSpec {
  int row = 0;
  int col = 0;
  int origin_x = 0;
  int origin_y = 0;
  int width = 0;
  int height = 0;

  bool operator==(const TileSpec&) const = default;
};

struct SlicePlan {
  int image_width = 0;
  int image_height = 0;
  int tile_size = 0;
  double overlap_ratio = 0.0;
  int rows = 0;
  int cols = 0;
  std::vector<TileSpec> tiles;  // row-major order
};

// Step between consecutive tile origins: tile_size - floor(overlap * tile_size).
int slice_stride(int tile_size, double overlap_ratio);

// Overlapping tile grid covering the full image. Origins per axis are
// 0, stride, 2*stride, ...; the final origin is clamped so the last tile
// ends exactly at the image edge, and duplicate origins are dropped.
// Requires positive dimensions, tile_size >= 1, overlap_ratio in [0, 1).
SlicePlan compute_slice_plan(int image_width, int image_height, int tile_size,
                             double overlap_ratio);

// Translate a tile-local box into image coordinates. Boxes that exceed the
// tile bounds by more than `tolerance` pixels are rejected; boxes inside the
// tolerance band are clipped to the tile before translation, so in-bounds
// boxes keep their dimensions exactly.
BoundingBox remap_box(const BoundingBox& box, const TileSpec& tile,
                      double tolerance = 1.0);

// Translate an image-coordinate box into tile-local coordinates. Inverse of
// remap_box for boxes inside the tile: bit-exact for pixel-aligned boxes,
// within one floating-point rounding of the shifted magnitude otherwise.
BoundingBox inverse_remap_box(const BoundingBox& box, const TileSpec& tile);

// Copy of the tile's pixels; the tile must lie inside the image.
RasterImage extract_tile(const RasterImage& img, const TileSpec& tile);

}  // namespace slicedet

#endif  // SLICEDET_SLICING_HPP_
