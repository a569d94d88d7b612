// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "slicedet/nms.hpp"

using namespace slicedet;

namespace {

std::vector<Detection> random_detections(std::mt19937& rng, int n,
                                         int classes = 3, double span = 60.0) {
  std::uniform_real_distribution<double> coord(0.0, span);
  std::uniform_real_distribution<double> extent(1.0, span / 3);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::uniform_int_distribution<int> cls(0, classes - 1);
  std::vector<Detection> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x1 = coord(rng);
    const double y1 = coord(rng);
    out.push_back({{x1, y1, x1 + extent(rng), y1 + extent(rng)}, cls(rng), score(rng)});
  }
  return out;
}

bool same_lists(const std::vector<Detection>& a, const std::vector<Detection>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].box.x1 != b[i].box.x1 || a[i].box.y1 != b[i].box.y1 ||
        a[i].box.x2 != b[i].box.x2 || a[i].box.y2 != b[i].box.y2 ||
        a[i].class_id != b[i].class_id || a[i].score != b[i].score) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("duplicates collapse to the strongest detection") {
  NmsConfig cfg;
  std::vector<Detection> dets{
      {{0, 0, 10, 10}, 0, 0.9},
      {{0.5, 0, 10.5, 10}, 0, 0.8},  // iou ~0.90 with the first
      {{40, 40, 50, 50}, 0, 0.7},
  };
  const auto kept = greedy_nms(dets, cfg);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].score == 0.9);
  CHECK(kept[1].score == 0.7);
}

TEST_CASE("suppression is strict: iou exactly at threshold survives") {
  NmsConfig cfg;
  cfg.iou_threshold = 0.5;
  cfg.score_threshold = 0.0;
  // iou((0,0,10,10), (0,5,10,15)) = 50/150 = 1/3; below threshold -> kept.
  // iou((0,0,10,10), (0,0,10,5))  = 50/100 = 0.5; equal, not greater -> kept.
  std::vector<Detection> dets{
      {{0, 0, 10, 10}, 0, 0.9},
      {{0, 0, 10, 5}, 0, 0.8},
  };
  const auto kept = greedy_nms(dets, cfg);
  CHECK(kept.size() == 2);

  // Nudge the overlap above 0.5 and the weaker one goes.
  dets[1].box = {0, 0, 10, 5.2};
  const auto kept2 = greedy_nms(dets, cfg);
  CHECK(kept2.size() == 1);
}

TEST_CASE("class awareness splits suppression by class") {
  NmsConfig cfg;
  std::vector<Detection> dets{
      {{0, 0, 10, 10}, 0, 0.9},
      {{0, 0, 10, 10}, 1, 0.8},  // same box, different class
  };
  CHECK(greedy_nms(dets, cfg).size() == 2);
  cfg.class_aware = false;
  const auto merged = greedy_nms(dets, cfg);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].class_id == 0);
}

TEST_CASE("score threshold filters before suppression") {
  NmsConfig cfg;
  cfg.score_threshold = 0.5;
  std::vector<Detection> dets{
      {{0, 0, 10, 10}, 0, 0.49},
      {{20, 20, 30, 30}, 0, 0.51},
  };
  const auto kept = greedy_nms(dets, cfg);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].score == 0.51);
}

TEST_CASE("output is canonically ordered and box-preserving") {
  std::mt19937 rng(31);
  NmsConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    const auto dets = random_detections(rng, 40);
    const auto kept = greedy_nms(dets, cfg);
    for (std::size_t i = 1; i < kept.size(); ++i) {
      CHECK(detection_before(kept[i - 1], kept[i]));
    }
    // Every output detection is one of the inputs, bitwise.
    for (const auto& k : kept) {
      const bool found = std::any_of(dets.begin(), dets.end(), [&](const Detection& d) {
        return d.box.x1 == k.box.x1 && d.box.y1 == k.box.y1 &&
               d.box.x2 == k.box.x2 && d.box.y2 == k.box.y2 &&
               d.class_id == k.class_id && d.score == k.score;
      });
      CHECK(found);
    }
  }
}

TEST_CASE("greedy nms is idempotent") {
  std::mt19937 rng(37);
  NmsConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    const auto dets = random_detections(rng, 30);
    const auto once = greedy_nms(dets, cfg);
    const auto twice = greedy_nms(once, cfg);
    CHECK(same_lists(once, twice));
  }
}

TEST_CASE("no kept same-class pair overlaps beyond the threshold") {
  std::mt19937 rng(41);
  NmsConfig cfg;
  cfg.iou_threshold = 0.4;
  for (int trial = 0; trial < 100; ++trial) {
    const auto kept = greedy_nms(random_detections(rng, 50), cfg);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = i + 1; j < kept.size(); ++j) {
        if (kept[i].class_id != kept[j].class_id) continue;
        CHECK(iou(kept[i].box, kept[j].box) <= cfg.iou_threshold);
      }
    }
  }
}

TEST_CASE("raising the score threshold never adds detections") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto dets = random_detections(rng, 40);
    NmsConfig lo;
    lo.score_threshold = 0.2;
    NmsConfig hi;
    hi.score_threshold = 0.6;
    const auto kept_lo = greedy_nms(dets, lo);
    const auto kept_hi = greedy_nms(dets, hi);
    CHECK(kept_hi.size() <= kept_lo.size());
    // Stronger filter output is a subset of the weaker filter output.
    for (const auto& k : kept_hi) {
      const bool found = std::any_of(kept_lo.begin(), kept_lo.end(),
                                     [&](const Detection& d) {
                                       return d.box.x1 == k.box.x1 &&
                                              d.box.y1 == k.box.y1 &&
                                              d.class_id == k.class_id &&
                                              d.score == k.score;
                                     });
      CHECK(found);
    }
  }
}

TEST_CASE("nms config validation") {
  std::vector<Detection> dets{{{0, 0, 1, 1}, 0, 0.5}};
  NmsConfig bad;
  bad.iou_threshold = 0.0;
  CHECK_THROWS_AS(greedy_nms(dets, bad), std::invalid_argument);
  bad.iou_threshold = 1.5;
  CHECK_THROWS_AS(greedy_nms(dets, bad), std::invalid_argument);
  NmsConfig edge;
  edge.iou_threshold = 1.0;  // inclusive upper edge is legal
  CHECK(greedy_nms(dets, edge).size() == 1);
}

TEST_CASE("tile merge is invariant to entry permutation") {
  const SlicePlan plan = compute_slice_plan(1000, 640, 640, 0.2);
  REQUIRE(plan.tiles.size() == 2);
  NmsConfig cfg;
  cfg.score_threshold = 0.0;

  // One object visible fully in tile 0 and partially in tile 1.
  std::vector<std::pair<TileSpec, std::vector<Detection>>> per_tile{
      {plan.tiles[0], {{{500, 100, 620, 160}, 0, 0.95}, {{30, 30, 60, 50}, 1, 0.6}}},
      {plan.tiles[1], {{{140, 100, 260, 160}, 0, 0.95}}},
  };
  const auto merged = merge_tile_detections(per_tile, plan, cfg);

  std::swap(per_tile[0], per_tile[1]);
  const auto swapped = merge_tile_detections(per_tile, plan, cfg);
  CHECK(same_lists(merged, swapped));

  // The straddler dedupes to one global box; the lone box survives.
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].box.x1 == 500.0);
  CHECK(merged[0].box.x2 == 620.0);
  CHECK(merged[1].class_id == 1);
}

TEST_CASE("tile merge rejects tiles outside the plan") {
  const SlicePlan plan = compute_slice_plan(1000, 640, 640, 0.2);
  TileSpec alien;
  alien.row = 0;
  alien.col = 0;
  alien.origin_x = 7;  // not the plan's tile at (0, 0)
  alien.width = 640;
  alien.height = 640;
  NmsConfig cfg;
  std::vector<std::pair<TileSpec, std::vector<Detection>>> per_tile{
      {alien, {{{0, 0, 5, 5}, 0, 0.9}}}};
  CHECK_THROWS_AS(merge_tile_detections(per_tile, plan, cfg), std::invalid_argument);
}
