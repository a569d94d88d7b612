// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "slicedet/detector.hpp"
#include "slicedet/io_json.hpp"
#include "slicedet/pipeline.hpp"
#include "slicedet/scene.hpp"

using namespace slicedet;

namespace {

struct Scene {
  RasterImage image;
  std::vector<GroundTruthBox> truths;
  ColorClassMap cmap;
};

Scene make_scene(int width, int height, int objects, int classes,
                 std::uint32_t seed, int tile, double overlap, int straddle) {
  SceneSpec spec;
  spec.width = width;
  spec.height = height;
  spec.num_objects = objects;
  spec.num_classes = classes;
  spec.seed = seed;
  spec.tile_size = tile;
  spec.overlap_ratio = overlap;
  spec.min_straddling = straddle;
  const SceneLayout layout = generate_scene(spec);
  Scene s;
  s.cmap = make_default_class_map(classes);
  auto rendered = render_scene(width, height, layout.rectangles, s.cmap);
  s.image = std::move(rendered.first);
  s.truths = std::move(rendered.second);
  return s;
}

std::string detections_signature(const RunResult& run) {
  DetectionFile f;
  f.image = {"mem", run.plan.image_width, run.plan.image_height};
  f.objects = run.detections;
  f.meta = {"sliced", run.plan.tile_size, run.plan.overlap_ratio, 0.5};
  return detections_to_json(f);
}

// Counts detector invocations and can simulate failures or thread hostility.
class CountingDetector : public Detector {
 public:
  explicit CountingDetector(ColorClassMap cmap, bool safe = true)
      : inner_(std::move(cmap)), safe_(safe) {}

  std::vector<Detection> detect(const RasterImage& image) const override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    if (!safe_) {
      if (busy_.exchange(true)) concurrent_.store(true);
      const auto out = inner_.detect(image);
      busy_.store(false);
      return out;
    }
    return inner_.detect(image);
  }
  bool thread_safe() const override { return safe_; }

  int calls() const { return calls_.load(); }
  bool saw_concurrency() const { return concurrent_.load(); }

 private:
  SyntheticDetector inner_;
  bool safe_;
  mutable std::atomic<int> calls_{0};
  mutable std::atomic<bool> busy_{false};
  mutable std::atomic<bool> concurrent_{false};
};

class FailingDetector : public Detector {
 public:
  std::vector<Detection> detect(const RasterImage& image) const override {
    if (image.width() < 640 || image.height() < 640) {
      throw std::runtime_error("undersized input");
    }
    return {};
  }
};

}  // namespace

TEST_CASE("single-tile sliced run equals the direct run") {
  const Scene s = make_scene(600, 500, 8, 3, 42, 640, 0.2, 0);
  const SyntheticDetector det(s.cmap);
  PipelineConfig cfg;
  cfg.tile_size = 640;
  const RunResult sliced = run_sliced(s.image, det, cfg);
  const RunResult direct = run_direct(s.image, det, cfg);
  REQUIRE(sliced.plan.tiles.size() == 1);
  REQUIRE(direct.plan.tiles.size() == 1);
  REQUIRE(sliced.detections.size() == direct.detections.size());
  for (std::size_t i = 0; i < sliced.detections.size(); ++i) {
    CHECK(sliced.detections[i].box.x1 == direct.detections[i].box.x1);
    CHECK(sliced.detections[i].box.y2 == direct.detections[i].box.y2);
    CHECK(sliced.detections[i].score == direct.detections[i].score);
    CHECK(sliced.detections[i].class_id == direct.detections[i].class_id);
  }
}

TEST_CASE("sliced run recovers every object exactly once across seams") {
  const Scene s = make_scene(1200, 900, 16, 4, 7, 512, 0.25, 6);
  const SyntheticDetector det(s.cmap);
  PipelineConfig cfg;
  cfg.tile_size = 512;
  cfg.overlap_ratio = 0.25;
  const RunResult run = run_sliced(s.image, det, cfg);
  REQUIRE(run.detections.size() == s.truths.size());
  for (const auto& t : s.truths) {
    int hits = 0;
    for (const auto& d : run.detections) {
      if (d.class_id == t.class_id && iou(d.box, t.box) >= 0.99) ++hits;
    }
    CHECK(hits == 1);
  }
  const EvalReport report = evaluate_run(run, s.truths, coco_thresholds());
  REQUIRE(report.map50.has_value());
  CHECK(*report.map50 == 1.0);
  CHECK(*report.map50_95 == 1.0);
  REQUIRE(report.latency_ms.has_value());
  REQUIRE(report.fps.has_value());
  CHECK(*report.fps * *report.latency_ms == doctest::Approx(1000.0).epsilon(1e-9));
}

TEST_CASE("worker count never changes the output bytes") {
  const Scene s = make_scene(1300, 800, 12, 3, 99, 400, 0.2, 4);
  const SyntheticDetector det(s.cmap);
  PipelineConfig cfg;
  cfg.tile_size = 400;
  cfg.workers = 1;
  const std::string base = detections_signature(run_sliced(s.image, det, cfg));
  for (int workers : {2, 3, 8}) {
    cfg.workers = workers;
    CHECK(detections_signature(run_sliced(s.image, det, cfg)) == base);
  }
}

TEST_CASE("every tile is visited exactly once") {
  const Scene s = make_scene(1000, 640, 6, 2, 3, 640, 0.2, 0);
  const CountingDetector det(s.cmap);
  PipelineConfig cfg;
  cfg.workers = 4;
  const RunResult run = run_sliced(s.image, det, cfg);
  CHECK(run.plan.tiles.size() == 2);
  CHECK(det.calls() == 2);
  CHECK(run.per_tile_ms.size() == 2);
  for (double ms : run.per_tile_ms) CHECK(ms >= 0.0);
  CHECK(run.detect_ms >= 0.0);
}

TEST_CASE("detectors that refuse concurrency run serially") {
  const Scene s = make_scene(1300, 900, 10, 2, 17, 320, 0.2, 0);
  const CountingDetector det(s.cmap, /*safe=*/false);
  PipelineConfig cfg;
  cfg.tile_size = 320;
  cfg.workers = 8;
  const RunResult run = run_sliced(s.image, det, cfg);
  CHECK(det.calls() == static_cast<int>(run.plan.tiles.size()));
  CHECK_FALSE(det.saw_concurrency());
}

TEST_CASE("a failing tile aborts the run and names the tile") {
  // 500px height caps every tile below 640, tripping the detector.
  const Scene s = make_scene(1000, 500, 5, 2, 23, 640, 0.2, 0);
  const FailingDetector det;  // rejects the clamped edge tiles
  PipelineConfig cfg;
  cfg.workers = 2;
  try {
    run_sliced(s.image, det, cfg);
    FAIL("expected tile failure to propagate");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("tile") != std::string::npos);
    CHECK(msg.find("row") != std::string::npos);
    CHECK(msg.find("undersized input") != std::string::npos);
  }
}

TEST_CASE("direct mode downscales only when asked and only when oversized") {
  const Scene s = make_scene(1400, 1000, 10, 3, 31, 640, 0.2, 0);
  const SyntheticDetector det(s.cmap);

  PipelineConfig plain;
  const RunResult full = run_direct(s.image, det, plain);
  REQUIRE(full.plan.tiles.size() == 1);
  CHECK(full.plan.tiles[0].width == 1400);
  // Full-resolution direct run on a clean scene is still exact.
  CHECK(full.detections.size() == s.truths.size());

  PipelineConfig shrunk;
  shrunk.direct_downscale = true;
  const RunResult down = run_direct(s.image, det, shrunk);
  // Boxes come back in source coordinates even when detection ran at 640.
  for (const auto& d : down.detections) {
    CHECK(d.box.x2 <= 1400.0 + 1e-9);
    CHECK(d.box.y2 <= 1000.0 + 1e-9);
  }

  // Small images are untouched by the flag.
  const Scene tiny = make_scene(320, 240, 4, 2, 37, 640, 0.2, 0);
  const SyntheticDetector tdet(tiny.cmap);
  const RunResult a = run_direct(tiny.image, tdet, plain);
  const RunResult b = run_direct(tiny.image, tdet, shrunk);
  REQUIRE(a.detections.size() == b.detections.size());
  for (std::size_t i = 0; i < a.detections.size(); ++i) {
    CHECK(a.detections[i].box.x1 == b.detections[i].box.x1);
    CHECK(a.detections[i].score == b.detections[i].score);
  }
}

TEST_CASE("optional whole-image pass changes nothing on clean scenes") {
  const Scene s = make_scene(1100, 800, 9, 3, 53, 512, 0.2, 3);
  const SyntheticDetector det(s.cmap);
  PipelineConfig cfg;
  cfg.tile_size = 512;
  const RunResult without = run_sliced(s.image, det, cfg);
  cfg.full_image_pass = true;
  const RunResult with = run_sliced(s.image, det, cfg);
  // The extra pass adds only duplicates of already-found objects, all of
  // which the merge suppresses.
  REQUIRE(with.detections.size() == without.detections.size());
  for (std::size_t i = 0; i < with.detections.size(); ++i) {
    CHECK(with.detections[i].box.x1 == without.detections[i].box.x1);
    CHECK(with.detections[i].class_id == without.detections[i].class_id);
  }
}

TEST_CASE("tighter nms never yields more detections on oracle scenes") {
  const Scene s = make_scene(1200, 800, 14, 4, 61, 400, 0.25, 5);
  const SyntheticDetector det(s.cmap);
  PipelineConfig cfg;
  cfg.tile_size = 400;
  cfg.overlap_ratio = 0.25;
  std::size_t prev = 0;
  bool first = true;
  for (double threshold : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    cfg.nms.iou_threshold = threshold;
    const RunResult run = run_sliced(s.image, det, cfg);
    if (!first) CHECK(run.detections.size() >= prev);
    prev = run.detections.size();
    first = false;
  }
}

TEST_CASE("empty scene yields zero detections but a full plan") {
  const ColorClassMap cmap = make_default_class_map(2);
  const RasterImage blank(1000, 900);
  const SyntheticDetector det(cmap);
  PipelineConfig cfg;
  const RunResult run = run_sliced(blank, det, cfg);
  CHECK(run.detections.empty());
  CHECK(run.plan.tiles.size() == 4);  // 2 x 2 grid of 640s on 1000x900
  const EvalReport report = evaluate_run(run, {}, {0.5});
  CHECK(report.num_detections == 0);
  CHECK(report.num_ground_truths == 0);
}

TEST_CASE("pipeline validates its configuration") {
  const ColorClassMap cmap = make_default_class_map(1);
  const SyntheticDetector det(cmap);
  const RasterImage img(100, 100);
  PipelineConfig bad;
  bad.workers = 0;
  CHECK_THROWS_AS(run_sliced(img, det, bad), std::invalid_argument);
  PipelineConfig bad2;
  bad2.overlap_ratio = 1.0;
  CHECK_THROWS_AS(run_sliced(img, det, bad2), std::invalid_argument);
}
