// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace slicedet {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void check_config(const PipelineConfig& config) {
  if (config.workers < 1) {
    throw std::invalid_argument("workers must be >= 1");
  }
}

}  // namespace

RunResult run_sliced(const RasterImage& image, const Detector& detector,
                     const PipelineConfig& config) {
  check_config(config);
  RunResult result;
  result.plan = compute_slice_plan(image.width(), image.height(),
                                   config.tile_size, config.overlap_ratio);
  const std::size_t n_tiles = result.plan.tiles.size();
  result.per_tile_ms.assign(n_tiles, 0.0);

  std::vector<std::vector<Detection>> per_tile(n_tiles);
  std::vector<std::exception_ptr> errors(n_tiles);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_tiles || failed.load()) return;
      try {
        const TileSpec& tile = result.plan.tiles[i];
        const RasterImage patch = extract_tile(image, tile);
        const auto start = Clock::now();
        per_tile[i] = detector.detect(patch);
        result.per_tile_ms[i] = elapsed_ms(start);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  const int n_workers =
      detector.thread_safe()
          ? static_cast<int>(std::min<std::size_t>(
                static_cast<std::size_t>(config.workers), n_tiles))
          : 1;
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (int t = 0; t < n_workers; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  for (std::size_t i = 0; i < n_tiles; ++i) {
    if (errors[i]) {
      const TileSpec& tile = result.plan.tiles[i];
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        throw std::runtime_error("detector failed on tile (row " +
                                 std::to_string(tile.row) + ", col " +
                                 std::to_string(tile.col) + "): " + e.what());
      }
    }
  }

  std::vector<std::pair<TileSpec, std::vector<Detection>>> keyed;
  keyed.reserve(n_tiles);
  for (std::size_t i = 0; i < n_tiles; ++i) {
    keyed.emplace_back(result.plan.tiles[i], std::move(per_tile[i]));
  }

  if (config.full_image_pass) {
    const auto start = Clock::now();
    std::vector<Detection> whole = detector.detect(image);
    result.per_tile_ms.push_back(elapsed_ms(start));
    // The whole image behaves as one extra tile at the origin.
    std::vector<Detection> merged;
    for (const auto& [tile, dets] : keyed) {
      for (const Detection& d : dets) {
        merged.push_back({remap_box(d.box, tile), d.class_id, d.score});
      }
    }
    merged.insert(merged.end(), whole.begin(), whole.end());
    result.detections = greedy_nms(merged, config.nms);
  } else {
    result.detections = merge_tile_detections(keyed, result.plan, config.nms);
  }

  for (double ms : result.per_tile_ms) result.detect_ms += ms;
  return result;
}

RunResult run_direct(const RasterImage& image, const Detector& detector,
                     const PipelineConfig& config) {
  check_config(config);
  RunResult result;
  result.plan = compute_slice_plan(image.width(), image.height(),
                                   std::max(image.width(), image.height()),
                                   0.0);

  const auto start = Clock::now();
  std::vector<Detection> raw;
  if (config.direct_downscale &&
      std::max(image.width(), image.height()) > config.tile_size) {
    DownscaleDetector wrapped(
        std::shared_ptr<const Detector>(&detector, [](const Detector*) {}),
        config.tile_size);
    raw = wrapped.detect(image);
  } else {
    raw = detector.detect(image);
  }
  result.per_tile_ms.push_back(elapsed_ms(start));
  result.detect_ms = result.per_tile_ms[0];
  result.detections = greedy_nms(raw, config.nms);
  return result;
}

EvalReport evaluate_run(const RunResult& result,
                        const std::vector<GroundTruthBox>& truths,
                        const std::vector<double>& thresholds,
                        bool include_gt_absent_classes) {
  EvalReport report = evaluate_detections(result.detections, truths,
                                          thresholds,
                                          include_gt_absent_classes);
  // Floor guards against clock granularity reporting a 0 ms detect pass.
  const LatencyStats stats =
      latency_stats({std::max(result.detect_ms, 1e-9)});
  report.latency_ms = stats.latency_ms;
  report.fps = stats.fps;
  return report;
}

}  // namespace slicedet
