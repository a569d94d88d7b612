// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_NMS_HPP_
#define SLICEDET_NMS_HPP_

#include <utility>
#include <vector>

#include "slicedet/geometry.hpp"
#include "slicedet/slicing.hpp"

namespace slicedet {

struct NmsConfig {
  double iou_threshold = 0.5;   // suppress on iou strictly greater
  double score_threshold = 0.05;
  bool class_aware = true;      // only same-class pairs suppress each other
};

// Greedy non-maximum suppression. Detections below score_threshold are
// dropped, the rest are sorted canonically (score desc, then class/x1/y1),
// and each kept head suppresses later detections whose iou with it exceeds
// iou_threshold (same class only when class_aware). Output keeps that order
// and never mutates boxes. Idempotent: rerunning on its output is identity.
std::vector<Detection> greedy_nms(const std::vector<Detection>& detections,
                                  const NmsConfig& config);

// Merge per-tile detections into image coordinates and deduplicate.
// Entries are canonicalized by tile (row, col) before remapping, so the
// result is invariant to the order of per_tile. Every tile must belong to
// the plan; detections must lie within their tile (remap_box tolerance).
std::vector<Detection> merge_tile_detections(
    const std::vector<std::pair<TileSpec, std::vector<Detection>>>& per_tile,
    const SlicePlan& plan, const NmsConfig& config);

}  // namespace slicedet

#endif  // SLICEDET_NMS_HPP_
