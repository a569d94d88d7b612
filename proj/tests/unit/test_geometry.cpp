// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "slicedet/geometry.hpp"

using namespace slicedet;

namespace {

BoundingBox random_box(std::mt19937& rng, double span = 100.0) {
  std::uniform_real_distribution<double> coord(0.0, span);
  std::uniform_real_distribution<double> extent(0.5, span / 2);
  const double x1 = coord(rng);
  const double y1 = coord(rng);
  return {x1, y1, x1 + extent(rng), y1 + extent(rng)};
}

}  // namespace

TEST_CASE("box area on rectangles and degenerates") {
  CHECK(box_area({0, 0, 10, 10}) == 100.0);
  CHECK(box_area({5, 5, 5, 9}) == 0.0);
  CHECK(box_area({0, 0, 3826, 3473}) == 13287698.0);
  CHECK(box_area({3, 3, 1, 5}) == 0.0);  // inverted extent counts as empty
}

TEST_CASE("iou on identical, disjoint, and half-overlapping boxes") {
  const BoundingBox unit{0, 0, 10, 10};
  CHECK(iou(unit, unit) == 1.0);
  CHECK(iou({0, 0, 10, 10}, {20, 20, 30, 30}) == 0.0);
  CHECK(iou({0, 0, 10, 10}, {5, 0, 15, 10}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Two degenerate boxes have zero union; defined as 0, not an error.
  CHECK(iou({1, 1, 1, 1}, {1, 1, 1, 1}) == 0.0);
}

TEST_CASE("giou on identical, disjoint, and hull-equals-union boxes") {
  const BoundingBox unit{0, 0, 10, 10};
  CHECK(giou(unit, unit) == 1.0);
  CHECK(giou({0, 0, 1, 1}, {2, 2, 3, 3}) == doctest::Approx(-7.0 / 9.0).epsilon(1e-15));
  // Hull equals union for aligned half-overlap, so giou == iou.
  CHECK(giou({0, 0, 10, 10}, {5, 0, 15, 10}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("iou symmetry, range, and giou dominance over random pairs") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const BoundingBox a = random_box(rng);
    const BoundingBox b = random_box(rng);
    const double ab = iou(a, b);
    CHECK(ab == iou(b, a));
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    const double g = giou(a, b);
    CHECK(g <= ab + 1e-15);
    CHECK(g >= -1.0);
    // Hull area equal to union area forces equality.
    const double uni = box_area(a) + box_area(b) - intersection_area(a, b);
    const double hull = (std::max(a.x2, b.x2) - std::min(a.x1, b.x1)) *
                        (std::max(a.y2, b.y2) - std::min(a.y1, b.y1));
    if (hull == uni) CHECK(g == ab);
  }
}

TEST_CASE("iou exact under integer translation of integer boxes") {
  // Pixel-aligned boxes and whole-pixel shifts stay exact in doubles, so the
  // ratio must not move by even one bit.
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(0, 4000);
  std::uniform_int_distribution<int> extent(1, 400);
  std::uniform_int_distribution<int> shift(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const double ax = coord(rng), ay = coord(rng);
    const double bx = coord(rng), by = coord(rng);
    const BoundingBox a{ax, ay, ax + extent(rng), ay + extent(rng)};
    const BoundingBox b{bx, by, bx + extent(rng), by + extent(rng)};
    const double tx = shift(rng);
    const double ty = shift(rng);
    const BoundingBox at{a.x1 + tx, a.y1 + ty, a.x2 + tx, a.y2 + ty};
    const BoundingBox bt{b.x1 + tx, b.y1 + ty, b.x2 + tx, b.y2 + ty};
    CHECK(iou(at, bt) == iou(a, b));
  }
}

TEST_CASE("iou stable under positive scaling to 1e-12") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> scale(0.1, 16.0);
  for (int i = 0; i < 1000; ++i) {
    const BoundingBox a = random_box(rng);
    const BoundingBox b = random_box(rng);
    const double s = scale(rng);
    const BoundingBox as{a.x1 * s, a.y1 * s, a.x2 * s, a.y2 * s};
    const BoundingBox bs{b.x1 * s, b.y1 * s, b.x2 * s, b.y2 * s};
    CHECK(iou(as, bs) == doctest::Approx(iou(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("canonical detection order is total and sorts by score first") {
  const Detection hi{{0, 0, 1, 1}, 3, 0.9};
  const Detection lo{{0, 0, 1, 1}, 0, 0.2};
  CHECK(detection_before(hi, lo));
  CHECK_FALSE(detection_before(lo, hi));

  // Equal scores fall through class, x1, y1, x2, y2.
  const Detection c0{{5, 5, 6, 6}, 0, 0.5};
  const Detection c1{{0, 0, 1, 1}, 1, 0.5};
  CHECK(detection_before(c0, c1));

  const Detection left{{1, 9, 2, 10}, 2, 0.5};
  const Detection right{{3, 0, 4, 1}, 2, 0.5};
  CHECK(detection_before(left, right));

  // Identical keys: strictly-before is false both ways.
  CHECK_FALSE(detection_before(c0, c0));

  // Distinct detections always order one way or the other.
  std::mt19937 rng(17);
  std::vector<Detection> pool;
  for (int i = 0; i < 64; ++i) {
    pool.push_back({random_box(rng), i % 5, (i % 10) / 10.0});
  }
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      const bool ab = detection_before(a, b);
      const bool ba = detection_before(b, a);
      CHECK_FALSE((ab && ba));
      const bool same = a.box.x1 == b.box.x1 && a.box.y1 == b.box.y1 &&
                        a.box.x2 == b.box.x2 && a.box.y2 == b.box.y2 &&
                        a.class_id == b.class_id && a.score == b.score;
      if (!same) CHECK((ab || ba));
    }
  }
}

TEST_CASE("sorting with detection_before is deterministic") {
  std::mt19937 rng(23);
  std::vector<Detection> dets;
  for (int i = 0; i < 200; ++i) dets.push_back({random_box(rng), i % 3, (i % 7) / 7.0});
  auto a = dets;
  auto b = dets;
  std::shuffle(b.begin(), b.end(), rng);
  std::sort(a.begin(), a.end(), detection_before);
  std::sort(b.begin(), b.end(), detection_before);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].box.x1 == b[i].box.x1);
    CHECK(a[i].score == b[i].score);
    CHECK(a[i].class_id == b[i].class_id);
  }
}
