// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "slicedet/detector.hpp"
#include "slicedet/eca.hpp"
#include "slicedet/nms.hpp"
#include "slicedet/pipeline.hpp"
#include "slicedet/scene.hpp"
#include "slicedet/slicing.hpp"
#include "slicedet/tensor.hpp"

namespace {

using namespace slicedet;

std::vector<Detection> random_detections(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 2000.0);
  std::uniform_real_distribution<double> len(4.0, 120.0);
  std::uniform_real_distribution<double> score(0.05, 1.0);
  std::uniform_int_distribution<int> cls(0, 5);
  std::vector<Detection> dets;
  dets.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = pos(rng);
    const double y = pos(rng);
    dets.push_back({{x, y, x + len(rng), y + len(rng)}, cls(rng), score(rng)});
  }
  return dets;
}

void BM_GreedyNms(benchmark::State& state) {
  const auto dets = random_detections(static_cast<int>(state.range(0)), 7);
  const NmsConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_nms(dets, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GreedyNms)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SlicePlan(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_slice_plan(side, side, 640, 0.2));
  }
}
BENCHMARK(BM_SlicePlan)->Arg(1280)->Arg(4096)->Arg(16384);

void BM_EcaForward(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  Tensor3 x(c, 32, 32);
  for (double& v : x.data()) v = val(rng);
  const auto kernel = Conv1dKernel::identity(eca_kernel_size(c));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eca_forward(x, kernel));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(x.size()));
}
BENCHMARK(BM_EcaForward)->Arg(64)->Arg(256)->Arg(512);

void BM_SyntheticDetect(benchmark::State& state) {
  SceneSpec spec;
  spec.width = 1280;
  spec.height = 960;
  spec.num_objects = 24;
  spec.num_classes = 6;
  spec.seed = 99;
  spec.min_straddling = 6;
  const SceneLayout layout = generate_scene(spec);
  const ColorClassMap cmap = make_default_class_map(spec.num_classes);
  const auto rendered =
      render_scene(spec.width, spec.height, layout.rectangles, cmap);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthetic_detect(rendered.first, cmap));
  }
  state.SetItemsProcessed(state.iterations() * spec.width * spec.height);
}
BENCHMARK(BM_SyntheticDetect);

void BM_SlicedRun(benchmark::State& state) {
  SceneSpec spec;
  spec.width = 1920;
  spec.height = 1080;
  spec.num_objects = 32;
  spec.num_classes = 6;
  spec.seed = 123;
  spec.min_straddling = 8;
  const SceneLayout layout = generate_scene(spec);
  const ColorClassMap cmap = make_default_class_map(spec.num_classes);
  const auto rendered =
      render_scene(spec.width, spec.height, layout.rectangles, cmap);
  const SyntheticDetector detector(cmap);
  PipelineConfig cfg;
  cfg.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sliced(rendered.first, detector, cfg));
  }
}
BENCHMARK(BM_SlicedRun)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
