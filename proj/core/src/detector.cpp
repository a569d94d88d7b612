// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slicedet {

void ColorClassMap::validate() const {
  if (classes.empty()) {
    throw std::invalid_argument("class map must name at least one class");
  }
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].second == background) {
      throw std::invalid_argument("class color collides with background");
    }
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (classes[i].first == classes[j].first) {
        throw std::invalid_argument("duplicate class id in class map");
      }
      if (classes[i].second == classes[j].second) {
        throw std::invalid_argument("duplicate class color in class map");
      }
    }
  }
}

int ColorClassMap::class_for(Rgb color) const {
  for (const auto& [id, rgb] : classes) {
    if (rgb == color) return id;
  }
  return -1;
}

ColorClassMap make_default_class_map(int num_classes) {
  static const Rgb kPalette[] = {
      {220, 50, 47},  {38, 139, 210}, {133, 153, 0},  {181, 137, 0},
      {211, 54, 130}, {42, 161, 152}, {203, 75, 22},  {108, 113, 196},
  };
  constexpr int kPaletteSize = static_cast<int>(std::size(kPalette));
  if (num_classes < 1 || num_classes > kPaletteSize) {
    throw std::invalid_argument("default palette supports 1 to " +
                                std::to_string(kPaletteSize) + " classes");
  }
  ColorClassMap map;
  map.background = {0, 0, 0};
  for (int i = 0; i < num_classes; ++i) map.classes.emplace_back(i, kPalette[i]);
  return map;
}

std::pair<RasterImage, std::vector<GroundTruthBox>> render_scene(
    int width, int height,
    const std::vector<std::pair<BoundingBox, int>>& rectangles,
    const ColorClassMap& color_map) {
  color_map.validate();
  RasterImage img(width, height, color_map.background);
  std::vector<GroundTruthBox> truths;
  truths.reserve(rectangles.size());
  for (const auto& [box, class_id] : rectangles) {
    const int px1 = static_cast<int>(std::floor(box.x1));
    const int py1 = static_cast<int>(std::floor(box.y1));
    const int px2 = static_cast<int>(std::ceil(box.x2));
    const int py2 = static_cast<int>(std::ceil(box.y2));
    if (px2 <= px1 || py2 <= py1) {
      throw std::invalid_argument("rectangle covers no pixels");
    }
    if (px1 < 0 || py1 < 0 || px2 > width || py2 > height) {
      throw std::invalid_argument("rectangle outside the canvas");
    }
    Rgb color{};
    bool found = false;
    for (const auto& [id, rgb] : color_map.classes) {
      if (id == class_id) {
        color = rgb;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("class id " + std::to_string(class_id) +
                                  " not in class map");
    }
    for (int y = py1; y < py2; ++y)
      for (int x = px1; x < px2; ++x) img.set(x, y, color);
    truths.push_back({{static_cast<double>(px1), static_cast<double>(py1),
                       static_cast<double>(px2), static_cast<double>(py2)},
                      class_id});
  }
  return {std::move(img), std::move(truths)};
}

std::vector<Detection> synthetic_detect(const RasterImage& image,
                                        const ColorClassMap& color_map,
                                        double area_scale) {
  color_map.validate();
  if (!(area_scale > 0.0)) {
    throw std::invalid_argument("area_scale must be positive");
  }
  const int w = image.width();
  const int h = image.height();
  std::vector<int> labels(static_cast<std::size_t>(w) * h, -1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      labels[static_cast<std::size_t>(y) * w + x] =
          color_map.class_for(image.at(x, y));

  std::vector<Detection> detections;
  std::vector<bool> visited(labels.size(), false);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t seed = static_cast<std::size_t>(y) * w + x;
      const int cls = labels[seed];
      if (cls < 0 || visited[seed]) continue;
      // Flood the 4-connected same-class component.
      int min_x = x, max_x = x, min_y = y, max_y = y;
      long long area = 0;
      visited[seed] = true;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++area;
        min_x = std::min(min_x, cx);
        max_x = std::max(max_x, cx);
        min_y = std::min(min_y, cy);
        max_y = std::max(max_y, cy);
        constexpr int dx[4] = {1, -1, 0, 0};
        constexpr int dy[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int nx = cx + dx[d];
          const int ny = cy + dy[d];
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
          if (visited[ni] || labels[ni] != cls) continue;
          visited[ni] = true;
          stack.push_back({nx, ny});
        }
      }
      const double score = std::clamp(
          std::min(1.0, static_cast<double>(area) / area_scale), 0.5, 1.0);
      detections.push_back(
          {{static_cast<double>(min_x), static_cast<double>(min_y),
            static_cast<double>(max_x + 1), static_cast<double>(max_y + 1)},
           cls,
           score});
    }
  }
  std::stable_sort(detections.begin(), detections.end(), detection_before);
  return detections;
}

DownscaleDetector::DownscaleDetector(std::shared_ptr<const Detector> inner,
                                     int max_side)
    : inner_(std::move(inner)), max_side_(max_side) {
  if (!inner_) throw std::invalid_argument("inner detector is required");
  if (max_side_ < 1) throw std::invalid_argument("max_side must be >= 1");
}

std::vector<Detection> DownscaleDetector::detect(
    const RasterImage& image) const {
  const int w = image.width();
  const int h = image.height();
  if (std::max(w, h) <= max_side_) return inner_->detect(image);

  int tw, th;
  if (w >= h) {
    tw = max_side_;
    th = std::max(1, static_cast<int>(std::llround(
                         static_cast<double>(h) * max_side_ / w)));
  } else {
    th = max_side_;
    tw = std::max(1, static_cast<int>(std::llround(
                         static_cast<double>(w) * max_side_ / h)));
  }
  const RasterImage small = resize_image_nearest(image, tw, th);
  const double sx = static_cast<double>(w) / tw;
  const double sy = static_cast<double>(h) / th;
  std::vector<Detection> detections = inner_->detect(small);
  for (Detection& d : detections) {
    d.box = {d.box.x1 * sx, d.box.y1 * sy, d.box.x2 * sx, d.box.y2 * sy};
  }
  return detections;
}

}  // namespace slicedet
