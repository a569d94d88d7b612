// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0
//
// slicedet command line: slice planning, demo scene generation, sliced and
// direct detection, evaluation, and latency benchmarking.
//
// Exit codes: 0 success, 2 usage error, 1 runtime error. Errors are printed
// to stderr as one JSON object so callers can parse failures.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slicedet/detector.hpp"
#include "slicedet/io_json.hpp"
#include "slicedet/losses.hpp"
#include "slicedet/metrics.hpp"
#include "slicedet/pipeline.hpp"
#include "slicedet/ppm.hpp"
#include "slicedet/scene.hpp"
#include "slicedet/slicing.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void print_error(const std::string& kind, const std::string& message) {
  json err = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

// Argument-domain checks run at parse time so violations are usage errors
// (exit 2), not runtime errors.
CLI::Validator interval_check(double lo, double hi, bool lo_open, bool hi_open,
                              const std::string& label) {
  return CLI::Validator(
      [=](std::string& s) -> std::string {
        double v = 0.0;
        try {
          v = std::stod(s);
        } catch (...) {
          return "'" + s + "' is not a number";
        }
        const bool below = lo_open ? v <= lo : v < lo;
        const bool above = hi_open ? v >= hi : v > hi;
        if (below || above) return "'" + s + "' is not in " + label;
        return {};
      },
      "FLOAT in " + label);
}

const CLI::Validator kOverlapRange =
    interval_check(0.0, 1.0, false, true, "[0, 1)");
const CLI::Validator kIouRange = interval_check(0.0, 1.0, true, false, "(0, 1]");
const CLI::Validator kScoreRange =
    interval_check(0.0, 1.0, false, false, "[0, 1]");

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct DetectOptions {
  std::string image_path;
  std::string classes_path;
  std::string mode = "sliced";
  std::string out_path;
  std::string timing_path;
  slicedet::PipelineConfig pipeline;
  double area_scale = 256.0;
};

void add_pipeline_flags(CLI::App* cmd, DetectOptions& opt) {
  cmd->add_option("--image", opt.image_path, "input image (binary PPM)")
      ->required();
  cmd->add_option("--classes", opt.classes_path, "class color map JSON")
      ->required();
  cmd->add_option("--mode", opt.mode, "sliced or direct")
      ->check(CLI::IsMember({"sliced", "direct"}));
  cmd->add_option("--tile", opt.pipeline.tile_size, "tile size in pixels")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--overlap", opt.pipeline.overlap_ratio,
                  "tile overlap ratio in [0, 1)")
      ->check(kOverlapRange);
  cmd->add_option("--nms-iou", opt.pipeline.nms.iou_threshold,
                  "NMS iou threshold in (0, 1]")
      ->check(kIouRange);
  cmd->add_option("--score-thresh", opt.pipeline.nms.score_threshold,
                  "drop detections scoring below this")
      ->check(kScoreRange);
  cmd->add_flag("--class-agnostic",
                [&opt](std::int64_t) { opt.pipeline.nms.class_aware = false; },
                "suppress across classes, not only within a class");
  cmd->add_option("--workers", opt.pipeline.workers, "tile worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--direct-downscale", opt.pipeline.direct_downscale,
                "direct mode: downscale oversized inputs to the tile size");
  cmd->add_flag("--full-image-pass", opt.pipeline.full_image_pass,
                "sliced mode: add a whole-image detector pass to the merge");
  cmd->add_option("--area-scale", opt.area_scale,
                  "score normalization area for the color detector")
      ->check(CLI::PositiveNumber);
}

slicedet::RunResult run_pipeline(const DetectOptions& opt,
                                 const slicedet::RasterImage& image) {
  const slicedet::ColorClassMap map =
      slicedet::load_class_map(opt.classes_path);
  const slicedet::SyntheticDetector detector(map, opt.area_scale);
  if (opt.mode == "direct") {
    return slicedet::run_direct(image, detector, opt.pipeline);
  }
  return slicedet::run_sliced(image, detector, opt.pipeline);
}

int cmd_slice_plan(int width, int height, int tile, double overlap,
                   const std::string& out_path) {
  const slicedet::SlicePlan plan =
      slicedet::compute_slice_plan(width, height, tile, overlap);
  write_output(slicedet::slice_plan_to_json(plan), out_path);
  return 0;
}

int cmd_demo(const slicedet::SceneSpec& spec, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const slicedet::SceneLayout layout = slicedet::generate_scene(spec);
  const slicedet::ColorClassMap map =
      slicedet::make_default_class_map(spec.num_classes);
  auto [image, truths] = slicedet::render_scene(spec.width, spec.height,
                                                layout.rectangles, map);

  const fs::path dir(out_dir);
  slicedet::save_ppm(image, (dir / "scene.ppm").string());
  slicedet::save_class_map(map, (dir / "classes.json").string());
  slicedet::AnnotationFile truth;
  truth.image = {"scene.ppm", spec.width, spec.height};
  truth.objects = truths;
  slicedet::save_annotation(truth, (dir / "truth.json").string());

  json summary = {{"objects", static_cast<int>(layout.rectangles.size())},
                  {"straddling", layout.straddling},
                  {"files",
                   json::array({"classes.json", "scene.ppm", "truth.json"})}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_detect(const DetectOptions& opt) {
  const slicedet::RasterImage image = slicedet::load_ppm(opt.image_path);
  const slicedet::RunResult result = run_pipeline(opt, image);

  slicedet::DetectionFile out;
  out.image = {opt.image_path, image.width(), image.height()};
  out.objects = result.detections;
  out.meta = {opt.mode, opt.pipeline.tile_size, opt.pipeline.overlap_ratio,
              opt.pipeline.nms.iou_threshold};
  write_output(slicedet::detections_to_json(out), opt.out_path);

  if (!opt.timing_path.empty()) {
    json timing = {{"per_tile_ms", result.per_tile_ms},
                   {"detect_ms", result.detect_ms},
                   {"tiles", static_cast<int>(result.plan.tiles.size())}};
    write_output(timing.dump(2) + "\n", opt.timing_path);
  }
  return 0;
}

int cmd_eval(const std::string& detections_path, const std::string& truth_path,
             double iou, bool coco_range, bool include_absent,
             const std::string& out_path) {
  const slicedet::DetectionFile dets =
      slicedet::load_detections(detections_path);
  const slicedet::AnnotationFile truth = slicedet::load_annotation(truth_path);
  if (dets.image.width != truth.image.width ||
      dets.image.height != truth.image.height) {
    throw std::runtime_error("detections and truth describe different images");
  }
  const std::vector<double> thresholds =
      coco_range ? slicedet::coco_thresholds() : std::vector<double>{iou};
  const slicedet::EvalReport report = slicedet::evaluate_detections(
      dets.objects, truth.objects, thresholds, include_absent);
  write_output(slicedet::eval_report_to_json(report), out_path);
  return 0;
}

int cmd_bench(const DetectOptions& opt, int repeat) {
  const slicedet::RasterImage image = slicedet::load_ppm(opt.image_path);
  std::vector<double> per_run_ms;
  int detections = 0;
  for (int i = 0; i < repeat; ++i) {
    const slicedet::RunResult result = run_pipeline(opt, image);
    per_run_ms.push_back(std::max(result.detect_ms, 1e-9));
    detections = static_cast<int>(result.detections.size());
  }
  const slicedet::LatencyStats stats = slicedet::latency_stats(per_run_ms);
  json out = {{"mode", opt.mode},
              {"repeats", repeat},
              {"detections", detections},
              {"latency_ms", stats.latency_ms},
              {"fps", stats.fps}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_loss_table(double alpha, double gamma, double vfl_alpha,
                   double vfl_gamma, int points) {
  if (points < 1) throw std::runtime_error("points must be >= 1");
  std::printf(
      "y_hat,bce_pos,bce_neg,focal_pos,focal_neg,vfl_q1,vfl_q05,vfl_neg\n");
  const slicedet::FocalConfig focal{alpha, gamma};
  const slicedet::FocalConfig vfl{vfl_alpha, vfl_gamma};
  for (int i = 1; i <= points; ++i) {
    const double y = static_cast<double>(i) / (points + 1);
    std::printf("%.6f,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", y,
                slicedet::bce_loss(y, 1), slicedet::bce_loss(y, 0),
                slicedet::focal_loss(y, 1, focal),
                slicedet::focal_loss(y, 0, focal),
                slicedet::varifocal_loss(y, 1.0, vfl),
                slicedet::varifocal_loss(y, 0.5, vfl),
                slicedet::varifocal_loss(y, 0.0, vfl));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sliced object detection toolkit"};
  app.require_subcommand(1);

  // slice-plan
  int plan_width = 0, plan_height = 0, plan_tile = 640;
  double plan_overlap = 0.2;
  std::string plan_out;
  CLI::App* plan_cmd =
      app.add_subcommand("slice-plan", "print the tile grid for an image size");
  plan_cmd->add_option("--width", plan_width, "image width")
      ->required()
      ->check(CLI::PositiveNumber);
  plan_cmd->add_option("--height", plan_height, "image height")
      ->required()
      ->check(CLI::PositiveNumber);
  plan_cmd->add_option("--tile", plan_tile, "tile size in pixels")
      ->check(CLI::PositiveNumber);
  plan_cmd->add_option("--overlap", plan_overlap, "overlap ratio in [0, 1)")
      ->check(kOverlapRange);
  plan_cmd->add_option("--out", plan_out, "write JSON here instead of stdout");

  // demo
  slicedet::SceneSpec demo_spec;
  demo_spec.width = 640;
  demo_spec.height = 640;
  demo_spec.num_objects = 12;
  demo_spec.num_classes = 6;
  std::string demo_dir;
  CLI::App* demo_cmd = app.add_subcommand(
      "demo", "render a reproducible scene with ground truth");
  demo_cmd->add_option("--seed", demo_spec.seed, "layout seed")->required();
  demo_cmd->add_option("--width", demo_spec.width, "canvas width")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--height", demo_spec.height, "canvas height")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--objects", demo_spec.num_objects, "rectangle count")
      ->check(CLI::NonNegativeNumber);
  demo_cmd->add_option("--classes", demo_spec.num_classes, "class count")
      ->check(CLI::Range(1, 8));
  demo_cmd->add_option("--tile", demo_spec.tile_size,
                       "tile size the layout is aware of")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--overlap", demo_spec.overlap_ratio, "overlap ratio")
      ->check(kOverlapRange);
  demo_cmd->add_option("--straddle", demo_spec.min_straddling,
                       "rectangles forced onto tile seams")
      ->check(CLI::NonNegativeNumber);
  demo_cmd->add_option("--out-dir", demo_dir, "output directory")->required();

  // detect
  DetectOptions detect_opt;
  CLI::App* detect_cmd =
      app.add_subcommand("detect", "run detection on one image");
  add_pipeline_flags(detect_cmd, detect_opt);
  detect_cmd->add_option("--out", detect_opt.out_path,
                         "write detections here instead of stdout");
  detect_cmd->add_option("--timing-out", detect_opt.timing_path,
                         "write per-tile timing JSON here");

  // eval
  std::string eval_dets, eval_truth, eval_out;
  double eval_iou = 0.5;
  bool eval_coco = false, eval_absent = false;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "score detections against ground truth");
  eval_cmd->add_option("--detections", eval_dets, "detections JSON")
      ->required();
  eval_cmd->add_option("--truth", eval_truth, "annotation JSON")->required();
  eval_cmd->add_option("--iou", eval_iou, "single iou threshold")
      ->check(kIouRange);
  eval_cmd->add_flag("--coco-range", eval_coco,
                     "evaluate the 0.50:0.05:0.95 ladder");
  eval_cmd->add_flag("--include-absent", eval_absent,
                     "count detection-only classes as AP 0");
  eval_cmd->add_option("--out", eval_out, "write JSON here instead of stdout");

  // bench
  DetectOptions bench_opt;
  int bench_repeat = 5;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "measure detection latency and fps");
  add_pipeline_flags(bench_cmd, bench_opt);
  bench_cmd->add_option("--repeat", bench_repeat, "number of timed runs")
      ->check(CLI::PositiveNumber);

  // loss-table
  double lt_alpha = 0.25, lt_gamma = 2.0, lt_vfl_alpha = 0.75,
         lt_vfl_gamma = 2.0;
  int lt_points = 19;
  CLI::App* loss_cmd = app.add_subcommand(
      "loss-table", "print classification losses over a prediction grid");
  loss_cmd->add_option("--alpha", lt_alpha, "focal alpha");
  loss_cmd->add_option("--gamma", lt_gamma, "focal gamma");
  loss_cmd->add_option("--vfl-alpha", lt_vfl_alpha, "quality-branch alpha");
  loss_cmd->add_option("--vfl-gamma", lt_vfl_gamma, "quality-branch gamma");
  loss_cmd->add_option("--points", lt_points, "grid points")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (plan_cmd->parsed()) {
      return cmd_slice_plan(plan_width, plan_height, plan_tile, plan_overlap,
                            plan_out);
    }
    if (demo_cmd->parsed()) return cmd_demo(demo_spec, demo_dir);
    if (detect_cmd->parsed()) return cmd_detect(detect_opt);
    if (eval_cmd->parsed()) {
      return cmd_eval(eval_dets, eval_truth, eval_iou, eval_coco, eval_absent,
                      eval_out);
    }
    if (bench_cmd->parsed()) return cmd_bench(bench_opt, bench_repeat);
    if (loss_cmd->parsed()) {
      return cmd_loss_table(lt_alpha, lt_gamma, lt_vfl_alpha, lt_vfl_gamma,
                            lt_points);
    }
    print_error("usage", "no subcommand given");
    return 2;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return 1;
  }
}
