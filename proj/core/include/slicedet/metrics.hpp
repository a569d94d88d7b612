// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_METRICS_HPP_
#define SLICEDET_METRICS_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "slicedet/geometry.hpp"

namespace slicedet {

// Greedy detection-to-truth assignment for one image and one class.
// Detections are visited in canonical score order; each takes the unmatched
// ground truth with the highest iou if that iou reaches the threshold.
struct MatchOutcome {
  std::vector<bool> tp_flags;       // per detection, in visit order
  std::vector<int> matched_gt;      // gt index or -1, aligned with tp_flags
  std::vector<int> detection_order; // visit order as indices into the input
  std::vector<bool> gt_matched;
};

MatchOutcome match_detections(const std::vector<Detection>& detections,
                              const std::vector<GroundTruthBox>& truths,
                              double iou_threshold);

// Area under the all-points precision envelope. `defined` is false only for
// the vacuous case of no ground truth and no detections; the value is then 0
// by convention, as it is when ground truth is empty but detections exist.
struct ApResult {
  double value = 0.0;
  bool defined = true;
};

ApResult average_precision(const std::vector<bool>& tp_flags, int num_gt);

// Arithmetic mean; empty input is an error.
double mean_average_precision(const std::vector<double>& per_class_ap);

// The standard ten-threshold ladder 0.50, 0.55, ..., 0.95.
const std::vector<double>& coco_thresholds();

// Mean of mAP over the ten-threshold ladder; `evaluate` maps one iou
// threshold to the mAP at that threshold.
double map_over_coco_range(const std::function<double(double)>& evaluate);

struct LatencyStats {
  double latency_ms = 0.0;  // mean milliseconds per image
  double fps = 0.0;         // 1000 / latency_ms
};

LatencyStats latency_stats(const std::vector<double>& per_image_ms);

struct ClassApRow {
  int class_id = 0;
  int num_gt = 0;
  int num_detections = 0;
  std::vector<double> ap;  // aligned with EvalReport::thresholds
  bool defined = true;
};

struct EvalReport {
  std::vector<double> thresholds;
  std::vector<ClassApRow> per_class;
  std::vector<double> map_per_threshold;
  std::optional<double> map50;
  std::optional<double> map50_95;
  int num_detections = 0;
  int num_ground_truths = 0;
  std::optional<double> latency_ms;
  std::optional<double> fps;
};

// Single-image evaluation over the given iou thresholds. By default only
// classes present in the ground truth enter the mAP mean; with
// include_gt_absent_classes, classes seen only in detections count as AP 0.
EvalReport evaluate_detections(const std::vector<Detection>& detections,
                               const std::vector<GroundTruthBox>& truths,
                               const std::vector<double>& thresholds,
                               bool include_gt_absent_classes = false);

}  // namespace slicedet

#endif  // SLICEDET_METRICS_HPP_
