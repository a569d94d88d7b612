// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_GEOMETRY_HPP_
#define SLICEDET_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>

namespace slicedet {

// Axis-aligned box in corner format. Coordinates are real-valued pixels;
// a box is empty (area 0) when x2 <= x1 or y2 <= y1.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  bool empty() const { return x2 <= x1 || y2 <= y1; }
};

struct Detection {
  BoundingBox box;
  int class_id = 0;
  double score = 0.0;
};

struct GroundTruthBox {
  BoundingBox box;
  int class_id = 0;
};

inline double box_area(const BoundingBox& b) {
  const double w = b.x2 - b.x1;
  const double h = b.y2 - b.y1;
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

inline double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

// Intersection over union. Degenerate pairs (zero union) score 0.
inline double iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = box_area(a) + box_area(b) - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

// Generalized IoU: iou minus the fraction of the enclosing hull not covered
// by the union. Range [-1, 1]; equals iou when the hull is exactly the union.
inline double giou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = box_area(a) + box_area(b) - inter;
  if (uni <= 0.0) return 0.0;
  const double hull_w = std::max(a.x2, b.x2) - std::min(a.x1, b.x1);
  const double hull_h = std::max(a.y2, b.y2) - std::min(a.y1, b.y1);
  const double hull = hull_w * hull_h;
  const double base = inter / uni;
  if (hull <= 0.0) return base;
  return base - (hull - uni) / hull;
}

// Canonical detection ordering: score descending, then class_id, x1, y1
// ascending. Extended with x2, y2 so the order is total on distinct boxes.
inline bool detection_before(const Detection& a, const Detection& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.class_id != b.class_id) return a.class_id < b.class_id;
  if (a.box.x1 != b.box.x1) return a.box.x1 < b.box.x1;
  if (a.box.y1 != b.box.y1) return a.box.y1 < b.box.y1;
  if (a.box.x2 != b.box.x2) return a.box.x2 < b.box.x2;
  return a.box.y2 < b.box.y2;
}

}  // namespace slicedet

#endif  // SLICEDET_GEOMETRY_HPP_
