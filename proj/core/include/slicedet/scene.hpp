// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_SCENE_HPP_
#define SLICEDET_SCENE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "slicedet/geometry.hpp"

namespace slicedet {

// Recipe for a reproducible rectangle scene. Identical specs produce
// identical layouts on every run and platform.
struct SceneSpec {
  int width = 640;
  int height = 640;
  int num_objects = 12;
  int num_classes = 3;
  std::uint32_t seed = 1;
  // Tile grid whose seams the layout is aware of.
  int tile_size = 640;
  double overlap_ratio = 0.2;
  // At least this many rectangles straddle a tile seam (capped by seam
  // availability; a single-tile grid has none).
  int min_straddling = 0;
};

struct SceneLayout {
  std::vector<std::pair<BoundingBox, int>> rectangles;  // box, class_id
  int straddling = 0;  // rectangles crossing at least one tile seam
};

// Places pairwise disjoint integer rectangles (2 pixel minimum gap) with
// class ids cycling 0..num_classes-1. Rectangle areas stay inside the
// detector's strict score band (128, 256), so a fuller view of an object
// always outscores a clipped view of the same object. Seam-straddling
// rectangles keep at least 76% of each cut axis on the side of the seam
// that the overlapping neighbor tile sees in full, which keeps every
// clipped tile view inside the suppression radius of the full view.
SceneLayout generate_scene(const SceneSpec& spec);

}  // namespace slicedet

#endif  // SLICEDET_SCENE_HPP_
