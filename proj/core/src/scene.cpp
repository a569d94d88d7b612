// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/scene.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "slicedet/slicing.hpp"

namespace slicedet {

namespace {

// mt19937 output reduced by modulo: biased in theory, but exactly
// reproducible everywhere, which is what the layouts need.
int rand_int(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() %
                               static_cast<std::uint32_t>(hi - lo + 1));
}

struct Seam {
  int coord = 0;
  bool left_edge = false;  // seam is the leading edge of the next tile
};

// Interior tile edges along one axis. A box crossing a leading edge is
// clipped at its low side by that tile; a box crossing a trailing edge is
// clipped at its high side. A coordinate can carry both roles when a clamped
// final origin lands exactly on an earlier tile's edge; anchoring a straddler
// there would expose its minority piece to the tile on the far side as an
// unsuppressable sliver, so such coordinates stay in `avoid` (nothing may
// touch them) but never in `usable`.
struct AxisSeams {
  std::vector<Seam> avoid;
  std::vector<Seam> usable;
};

AxisSeams axis_seams(const std::vector<int>& origins, int tile_extent,
                     int image_extent) {
  AxisSeams seams;
  for (int o : origins) {
    if (o > 0) seams.avoid.push_back({o, true});
    if (o + tile_extent < image_extent)
      seams.avoid.push_back({o + tile_extent, false});
  }
  std::sort(seams.avoid.begin(), seams.avoid.end(),
            [](const Seam& a, const Seam& b) { return a.coord < b.coord; });
  for (const Seam& s : seams.avoid) {
    int twins = 0;
    for (const Seam& t : seams.avoid) twins += t.coord == s.coord;
    if (twins == 1) seams.usable.push_back(s);
  }
  return seams;
}

// True when every tile that sees any of [lo, hi) on this axis sees either
// the whole extent or at least 76% of it, and at least one tile sees the
// whole extent. Checked against the actual plan origins so clamped grids
// cannot smuggle a sliver view past the seam bookkeeping.
bool axis_views_safe(const std::vector<int>& origins, int tile_extent, int lo,
                     int hi) {
  bool full_view = false;
  const int extent = hi - lo;
  for (int o : origins) {
    const int view = std::min(hi, o + tile_extent) - std::max(lo, o);
    if (view <= 0) continue;
    if (view == extent) {
      full_view = true;
    } else if (100 * view < 76 * extent) {
      return false;
    }
  }
  return full_view;
}

bool crosses_any(const std::vector<Seam>& seams, int lo, int hi,
                 int ignore_coord = -1) {
  for (const Seam& s : seams) {
    if (s.coord == ignore_coord) continue;
    if (lo <= s.coord && s.coord <= hi) return true;
  }
  return false;
}

struct IntRect {
  int x1, y1, x2, y2;
};

bool overlaps_with_gap(const IntRect& a, const IntRect& b, int gap) {
  return a.x1 - gap < b.x2 && b.x1 < a.x2 + gap && a.y1 - gap < b.y2 &&
         b.y1 < a.y2 + gap;
}

// Width 10..18, height chosen so the area lands strictly inside (128, 256).
void sample_size(std::mt19937& rng, int& w, int& h) {
  w = rand_int(rng, 10, 18);
  const int h_lo = std::max(9, 128 / w + 1);
  const int h_hi = 255 / w;
  h = rand_int(rng, h_lo, h_hi);
}

// Position one axis of a straddling rectangle: the seam cuts off at most
// 24% of the extent, on the side the neighboring tile cannot see.
int straddle_low_coord(std::mt19937& rng, const Seam& seam, int extent) {
  const int max_cut = std::max(2, (24 * extent) / 100);
  const int cut = rand_int(rng, 2, max_cut);
  return seam.left_edge ? seam.coord - cut : seam.coord + cut - extent;
}

}  // namespace

SceneLayout generate_scene(const SceneSpec& spec) {
  if (spec.num_objects < 0) {
    throw std::invalid_argument("num_objects must be >= 0");
  }
  if (spec.num_classes < 1) {
    throw std::invalid_argument("num_classes must be >= 1");
  }
  if (spec.width < 40 || spec.height < 40) {
    throw std::invalid_argument("canvas must be at least 40x40");
  }

  const SlicePlan plan = compute_slice_plan(spec.width, spec.height,
                                            spec.tile_size,
                                            spec.overlap_ratio);
  std::vector<int> xs, ys;
  for (int c = 0; c < plan.cols; ++c)
    xs.push_back(plan.tiles[static_cast<std::size_t>(c)].origin_x);
  for (int r = 0; r < plan.rows; ++r)
    ys.push_back(
        plan.tiles[static_cast<std::size_t>(r) * plan.cols].origin_y);
  const AxisSeams seams_x = axis_seams(xs, plan.tiles[0].width, spec.width);
  const AxisSeams seams_y = axis_seams(ys, plan.tiles[0].height, spec.height);

  std::mt19937 rng(spec.seed);
  std::vector<IntRect> placed;
  SceneLayout layout;

  for (int i = 0; i < spec.num_objects; ++i) {
    // Straddle kinds cycle vertical seam, horizontal seam, both.
    bool want_x = false, want_y = false;
    if (i < spec.min_straddling) {
      const int kind = i % 3;
      want_x = (kind == 0 || kind == 2) && !seams_x.usable.empty();
      want_y = (kind == 1 || kind == 2) && !seams_y.usable.empty();
      if (!want_x && !want_y && !seams_x.usable.empty()) want_x = true;
      if (!want_x && !want_y && !seams_y.usable.empty()) want_y = true;
    }

    bool ok = false;
    for (int attempt = 0; attempt < 2000 && !ok; ++attempt) {
      int w, h;
      sample_size(rng, w, h);
      if (spec.width < w + 8 || spec.height < h + 8) continue;

      int x1, y1, seam_x_coord = -1, seam_y_coord = -1;
      if (want_x) {
        const Seam& s = seams_x.usable[static_cast<std::size_t>(rand_int(
            rng, 0, static_cast<int>(seams_x.usable.size()) - 1))];
        seam_x_coord = s.coord;
        x1 = straddle_low_coord(rng, s, w);
      } else {
        x1 = rand_int(rng, 2, spec.width - w - 2);
      }
      if (want_y) {
        const Seam& s = seams_y.usable[static_cast<std::size_t>(rand_int(
            rng, 0, static_cast<int>(seams_y.usable.size()) - 1))];
        seam_y_coord = s.coord;
        y1 = straddle_low_coord(rng, s, h);
      } else {
        y1 = rand_int(rng, 2, spec.height - h - 2);
      }

      const int x2 = x1 + w;
      const int y2 = y1 + h;
      if (x1 < 2 || y1 < 2 || x2 > spec.width - 2 || y2 > spec.height - 2)
        continue;
      // Exactly the intended seams may pass through the rectangle.
      if (crosses_any(seams_x.avoid, x1, x2, seam_x_coord)) continue;
      if (crosses_any(seams_y.avoid, y1, y2, seam_y_coord)) continue;
      // Every tile either misses the rectangle, sees all of it, or sees a
      // clip the full view will suppress.
      if (!axis_views_safe(xs, plan.tiles[0].width, x1, x2)) continue;
      if (!axis_views_safe(ys, plan.tiles[0].height, y1, y2)) continue;

      const IntRect rect{x1, y1, x2, y2};
      bool clash = false;
      for (const IntRect& other : placed) {
        if (overlaps_with_gap(rect, other, 2)) {
          clash = true;
          break;
        }
      }
      if (clash) continue;

      placed.push_back(rect);
      layout.rectangles.push_back(
          {{static_cast<double>(x1), static_cast<double>(y1),
            static_cast<double>(x2), static_cast<double>(y2)},
           i % spec.num_classes});
      if (want_x || want_y) ++layout.straddling;
      ok = true;
    }
    if (!ok) {
      throw std::runtime_error(
          "scene generation could not place every rectangle; "
          "lower num_objects or enlarge the canvas");
    }
  }
  return layout;
}

}  // namespace slicedet
