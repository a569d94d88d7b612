// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/nms.hpp"

#include <algorithm>
#include <stdexcept>

namespace slicedet {

std::vector<Detection> greedy_nms(const std::vector<Detection>& detections,
                                  const NmsConfig& config) {
  if (!(config.iou_threshold > 0.0 && config.iou_threshold <= 1.0)) {
    throw std::invalid_argument("iou_threshold must be in (0, 1]");
  }
  std::vector<Detection> sorted;
  sorted.reserve(detections.size());
  for (const Detection& d : detections) {
    if (d.score >= config.score_threshold) sorted.push_back(d);
  }
  std::stable_sort(sorted.begin(), sorted.end(), detection_before);

  std::vector<Detection> kept;
  std::vector<bool> suppressed(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (suppressed[i]) continue;
    kept.push_back(sorted[i]);
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (suppressed[j]) continue;
      if (config.class_aware && sorted[j].class_id != sorted[i].class_id)
        continue;
      if (iou(sorted[i].box, sorted[j].box) > config.iou_threshold)
        suppressed[j] = true;
    }
  }
  return kept;
}

std::vector<Detection> merge_tile_detections(
    const std::vector<std::pair<TileSpec, std::vector<Detection>>>& per_tile,
    const SlicePlan& plan, const NmsConfig& config) {
  // Canonical tile order makes the merge independent of input permutation.
  std::vector<const std::pair<TileSpec, std::vector<Detection>>*> ordered;
  ordered.reserve(per_tile.size());
  for (const auto& entry : per_tile) ordered.push_back(&entry);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    if (a->first.row != b->first.row) return a->first.row < b->first.row;
    return a->first.col < b->first.col;
  });

  std::vector<Detection> merged;
  for (const auto* entry : ordered) {
    const TileSpec& tile = entry->first;
    const bool in_plan =
        tile.row >= 0 && tile.row < plan.rows && tile.col >= 0 &&
        tile.col < plan.cols &&
        plan.tiles[static_cast<std::size_t>(tile.row) * plan.cols +
                   tile.col] == tile;
    if (!in_plan) {
      throw std::invalid_argument("tile does not belong to the slice plan");
    }
    for (const Detection& d : entry->second) {
      merged.push_back({remap_box(d.box, tile), d.class_id, d.score});
    }
  }
  return greedy_nms(merged, config);
}

}  // namespace slicedet
