// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/io_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace slicedet {

namespace {

using nlohmann::json;

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void save_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("invalid json: ") + e.what());
  }
}

json image_to_json(const ImageInfo& info) {
  return {{"path", info.path}, {"width", info.width}, {"height", info.height}};
}

ImageInfo image_from_json(const json& j) {
  ImageInfo info;
  info.path = j.at("path").get<std::string>();
  info.width = j.at("width").get<int>();
  info.height = j.at("height").get<int>();
  if (info.width <= 0 || info.height <= 0) {
    throw std::runtime_error("image dimensions must be positive");
  }
  return info;
}

json bbox_to_json(const BoundingBox& b) {
  return json::array({b.x1, b.y1, b.x2, b.y2});
}

BoundingBox bbox_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::runtime_error("bbox must be an array of four numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
          j[3].get<double>()};
}

}  // namespace

std::string annotation_to_json(const AnnotationFile& a) {
  json objects = json::array();
  for (const GroundTruthBox& g : a.objects) {
    objects.push_back({{"class", g.class_id}, {"bbox", bbox_to_json(g.box)}});
  }
  return canonical_dump(
      {{"image", image_to_json(a.image)}, {"objects", objects}});
}

AnnotationFile annotation_from_json(const std::string& text) {
  const json j = parse_text(text);
  AnnotationFile a;
  a.image = image_from_json(j.at("image"));
  for (const json& obj : j.at("objects")) {
    a.objects.push_back(
        {bbox_from_json(obj.at("bbox")), obj.at("class").get<int>()});
  }
  return a;
}

void save_annotation(const AnnotationFile& a, const std::string& path) {
  save_text(annotation_to_json(a), path);
}

AnnotationFile load_annotation(const std::string& path) {
  return annotation_from_json(slurp_file(path));
}

std::string detections_to_json(const DetectionFile& d) {
  json objects = json::array();
  for (const Detection& det : d.objects) {
    objects.push_back({{"class", det.class_id},
                       {"bbox", bbox_to_json(det.box)},
                       {"score", det.score}});
  }
  const json meta = {{"mode", d.meta.mode},
                     {"tile_size", d.meta.tile_size},
                     {"overlap", d.meta.overlap},
                     {"nms_iou", d.meta.nms_iou}};
  return canonical_dump({{"image", image_to_json(d.image)},
                         {"objects", objects},
                         {"meta", meta}});
}

DetectionFile detections_from_json(const std::string& text) {
  const json j = parse_text(text);
  DetectionFile d;
  d.image = image_from_json(j.at("image"));
  for (const json& obj : j.at("objects")) {
    const double score = obj.at("score").get<double>();
    if (!(score >= 0.0 && score <= 1.0)) {
      throw std::runtime_error("detection score must be in [0, 1]");
    }
    d.objects.push_back(
        {bbox_from_json(obj.at("bbox")), obj.at("class").get<int>(), score});
  }
  const json& meta = j.at("meta");
  d.meta.mode = meta.at("mode").get<std::string>();
  d.meta.tile_size = meta.at("tile_size").get<int>();
  d.meta.overlap = meta.at("overlap").get<double>();
  d.meta.nms_iou = meta.at("nms_iou").get<double>();
  return d;
}

void save_detections(const DetectionFile& d, const std::string& path) {
  save_text(detections_to_json(d), path);
}

DetectionFile load_detections(const std::string& path) {
  return detections_from_json(slurp_file(path));
}

std::string class_map_to_json(const ColorClassMap& m) {
  json classes = json::array();
  for (const auto& [id, rgb] : m.classes) {
    classes.push_back(
        {{"class", id}, {"color", json::array({rgb.r, rgb.g, rgb.b})}});
  }
  const json background =
      json::array({m.background.r, m.background.g, m.background.b});
  return canonical_dump({{"background", background}, {"classes", classes}});
}

namespace {

Rgb rgb_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::runtime_error("color must be an array of three bytes");
  }
  const int r = j[0].get<int>();
  const int g = j[1].get<int>();
  const int b = j[2].get<int>();
  for (int v : {r, g, b}) {
    if (v < 0 || v > 255) throw std::runtime_error("color channel out of range");
  }
  return {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
          static_cast<std::uint8_t>(b)};
}

}  // namespace

ColorClassMap class_map_from_json(const std::string& text) {
  const json j = parse_text(text);
  ColorClassMap m;
  m.background = rgb_from_json(j.at("background"));
  for (const json& entry : j.at("classes")) {
    m.classes.emplace_back(entry.at("class").get<int>(),
                           rgb_from_json(entry.at("color")));
  }
  m.validate();
  return m;
}

void save_class_map(const ColorClassMap& m, const std::string& path) {
  save_text(class_map_to_json(m), path);
}

ColorClassMap load_class_map(const std::string& path) {
  return class_map_from_json(slurp_file(path));
}

std::string slice_plan_to_json(const SlicePlan& plan) {
  json tiles = json::array();
  for (const TileSpec& t : plan.tiles) {
    tiles.push_back({{"row", t.row},
                     {"col", t.col},
                     {"origin_x", t.origin_x},
                     {"origin_y", t.origin_y},
                     {"width", t.width},
                     {"height", t.height}});
  }
  return canonical_dump({{"image_width", plan.image_width},
                         {"image_height", plan.image_height},
                         {"tile_size", plan.tile_size},
                         {"overlap_ratio", plan.overlap_ratio},
                         {"rows", plan.rows},
                         {"cols", plan.cols},
                         {"tiles", tiles}});
}

std::string eval_report_to_json(const EvalReport& report) {
  json per_class = json::array();
  for (const ClassApRow& row : report.per_class) {
    json ap = json::array();
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
      ap.push_back({{"iou", report.thresholds[i]}, {"ap", row.ap[i]}});
    }
    per_class.push_back({{"class", row.class_id},
                         {"num_gt", row.num_gt},
                         {"num_detections", row.num_detections},
                         {"ap", ap},
                         {"defined", row.defined}});
  }
  json map_rows = json::array();
  for (std::size_t i = 0; i < report.map_per_threshold.size(); ++i) {
    map_rows.push_back(
        {{"iou", report.thresholds[i]}, {"map", report.map_per_threshold[i]}});
  }
  json j = {{"counts",
             {{"detections", report.num_detections},
              {"ground_truths", report.num_ground_truths},
              {"classes", static_cast<int>(report.per_class.size())}}},
            {"per_class", per_class},
            {"map", map_rows}};
  j["map50"] = report.map50 ? json(*report.map50) : json(nullptr);
  j["map50_95"] = report.map50_95 ? json(*report.map50_95) : json(nullptr);
  j["latency_ms"] = report.latency_ms ? json(*report.latency_ms) : json(nullptr);
  j["fps"] = report.fps ? json(*report.fps) : json(nullptr);
  return canonical_dump(j);
}

}  // namespace slicedet
