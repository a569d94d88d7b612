// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_IO_JSON_HPP_
#define SLICEDET_IO_JSON_HPP_

#include <string>
#include <vector>

#include "slicedet/detector.hpp"
#include "slicedet/geometry.hpp"
#include "slicedet/metrics.hpp"
#include "slicedet/slicing.hpp"

namespace slicedet {

// All canonical JSON in this project: keys sorted, floats in shortest
// roundtrip form, two-space indent, trailing newline. Identical structures
// always serialize to identical bytes.

struct ImageInfo {
  std::string path;
  int width = 0;
  int height = 0;
};

// {"image": {"path", "width", "height"},
//  "objects": [{"class": int, "bbox": [x1, y1, x2, y2]}, ...]}
struct AnnotationFile {
  ImageInfo image;
  std::vector<GroundTruthBox> objects;
};

struct DetectionMeta {
  std::string mode;  // "sliced" or "direct"
  int tile_size = 0;
  double overlap = 0.0;
  double nms_iou = 0.0;
};

// Annotation schema plus per-object "score" and a run "meta" block.
struct DetectionFile {
  ImageInfo image;
  std::vector<Detection> objects;
  DetectionMeta meta;
};

std::string annotation_to_json(const AnnotationFile& a);
AnnotationFile annotation_from_json(const std::string& text);
void save_annotation(const AnnotationFile& a, const std::string& path);
AnnotationFile load_annotation(const std::string& path);

std::string detections_to_json(const DetectionFile& d);
DetectionFile detections_from_json(const std::string& text);
void save_detections(const DetectionFile& d, const std::string& path);
DetectionFile load_detections(const std::string& path);

std::string class_map_to_json(const ColorClassMap& m);
ColorClassMap class_map_from_json(const std::string& text);
void save_class_map(const ColorClassMap& m, const std::string& path);
ColorClassMap load_class_map(const std::string& path);

std::string slice_plan_to_json(const SlicePlan& plan);
std::string eval_report_to_json(const EvalReport& report);

}  // namespace slicedet

#endif  // SLICEDET_IO_JSON_HPP_
