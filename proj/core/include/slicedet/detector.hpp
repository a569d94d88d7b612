// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_DETECTOR_HPP_
#define SLICEDET_DETECTOR_HPP_

#include <memory>
#include <utility>
#include <vector>

#include "slicedet/geometry.hpp"
#include "slicedet/image.hpp"

namespace slicedet {

// Maps class ids to the flat colors they are drawn with. Colors must be
// pairwise distinct and distinct from the background.
struct ColorClassMap {
  std::vector<std::pair<int, Rgb>> classes;
  Rgb background{0, 0, 0};

  void validate() const;
  int class_for(Rgb color) const;  // -1 for background/unknown
};

// Default palette of up to 8 visually distinct classes 0..n-1.
ColorClassMap make_default_class_map(int num_classes);

// Detector contract: detect() returns boxes inside the image bounds (within
// a 1 pixel tolerance), scores in [0, 1], in canonical detection order.
// Implementations that are not safe to call concurrently return false from
// thread_safe(), and the pipeline then runs them serially.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::vector<Detection> detect(const RasterImage& image) const = 0;
  virtual bool thread_safe() const { return true; }
};

// Paints axis-aligned rectangles in class colors over the background and
// returns the image together with the per-rectangle ground truth. Pixels are
// covered on the half-open span [floor(x1), ceil(x2)) per axis, and each
// ground truth box carries exactly those rounded extents. Rectangles must be
// non-empty, lie inside the canvas, and use class ids from the map.
std::pair<RasterImage, std::vector<GroundTruthBox>> render_scene(
    int width, int height,
    const std::vector<std::pair<BoundingBox, int>>& rectangles,
    const ColorClassMap& color_map);

// Exact-color detector: pixels matching a class color are grouped into
// 4-connected components; each component yields one detection with its tight
// pixel bounding box and score min(1, area / area_scale) clamped to
// [0.5, 1]. Inverse of render_scene for scenes whose same-class rectangles
// do not touch.
std::vector<Detection> synthetic_detect(const RasterImage& image,
                                        const ColorClassMap& color_map,
                                        double area_scale = 256.0);

class SyntheticDetector : public Detector {
 public:
  explicit SyntheticDetector(ColorClassMap color_map,
                             double area_scale = 256.0)
      : color_map_(std::move(color_map)), area_scale_(area_scale) {
    color_map_.validate();
  }

  std::vector<Detection> detect(const RasterImage& image) const override {
    return synthetic_detect(image, color_map_, area_scale_);
  }

  const ColorClassMap& color_map() const { return color_map_; }

 private:
  ColorClassMap color_map_;
  double area_scale_;
};

// Size-limited front end: when the input exceeds max_side, it is downscaled
// (aspect preserved, nearest neighbor) before the inner detector runs, and
// the resulting boxes are scaled back to input coordinates.
class DownscaleDetector : public Detector {
 public:
  DownscaleDetector(std::shared_ptr<const Detector> inner, int max_side);

  std::vector<Detection> detect(const RasterImage& image) const override;
  bool thread_safe() const override { return inner_->thread_safe(); }

 private:
  std::shared_ptr<const Detector> inner_;
  int max_side_;
};

}  // namespace slicedet

#endif  // SLICEDET_DETECTOR_HPP_
