// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_PIPELINE_HPP_
#define SLICEDET_PIPELINE_HPP_

#include <vector>

#include "slicedet/detector.hpp"
#include "slicedet/metrics.hpp"
#include "slicedet/nms.hpp"
#include "slicedet/slicing.hpp"

namespace slicedet {

struct PipelineConfig {
  int tile_size = 640;
  double overlap_ratio = 0.2;
  NmsConfig nms;
  // Worker threads for the tile fan-out. Results are keyed by tile index,
  // so output is byte-identical for any worker count.
  int workers = 1;
  // run_direct only: shrink oversized inputs to tile_size (aspect preserved)
  // before the single detector call and map boxes back.
  bool direct_downscale = false;
  // run_sliced only: additionally run the detector on the whole image and
  // merge those detections with the tile detections before NMS.
  bool full_image_pass = false;
};

struct RunResult {
  std::vector<Detection> detections;
  SlicePlan plan;                   // rows/cols 1x1 for direct runs
  std::vector<double> per_tile_ms;  // detector time per tile, plan order
  double detect_ms = 0.0;           // sum of per-tile detector time
};

// Slice, detect each tile (in parallel when workers > 1 and the detector is
// thread safe), remap to image coordinates, and deduplicate with greedy NMS.
// A detector failure on any tile fails the run and names the tile.
RunResult run_sliced(const RasterImage& image, const Detector& detector,
                     const PipelineConfig& config);

// One detector call on the full image (optionally downscaled), then NMS.
RunResult run_direct(const RasterImage& image, const Detector& detector,
                     const PipelineConfig& config);

// Score a run against ground truth and attach latency stats derived from
// the run's detector timings.
EvalReport evaluate_run(const RunResult& result,
                        const std::vector<GroundTruthBox>& truths,
                        const std::vector<double>& thresholds,
                        bool include_gt_absent_classes = false);

}  // namespace slicedet

#endif  // SLICEDET_PIPELINE_HPP_
