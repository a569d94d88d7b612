// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace slicedet {

MatchOutcome match_detections(const std::vector<Detection>& detections,
                              const std::vector<GroundTruthBox>& truths,
                              double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw std::invalid_argument("iou_threshold must be in (0, 1]");
  }
  std::vector<int> order(detections.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return detection_before(detections[static_cast<std::size_t>(a)],
                            detections[static_cast<std::size_t>(b)]);
  });

  MatchOutcome out;
  out.detection_order = order;
  out.tp_flags.assign(detections.size(), false);
  out.matched_gt.assign(detections.size(), -1);
  out.gt_matched.assign(truths.size(), false);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Detection& det =
        detections[static_cast<std::size_t>(order[rank])];
    double best = 0.0;
    int best_gt = -1;
    for (std::size_t g = 0; g < truths.size(); ++g) {
      if (out.gt_matched[g]) continue;
      const double overlap = iou(det.box, truths[g].box);
      if (overlap > best) {  // ties keep the earliest ground truth
        best = overlap;
        best_gt = static_cast<int>(g);
      }
    }
    if (best_gt >= 0 && best >= iou_threshold) {
      out.tp_flags[rank] = true;
      out.matched_gt[rank] = best_gt;
      out.gt_matched[static_cast<std::size_t>(best_gt)] = true;
    }
  }
  return out;
}

ApResult average_precision(const std::vector<bool>& tp_flags, int num_gt) {
  if (num_gt < 0) throw std::invalid_argument("num_gt must be >= 0");
  if (num_gt == 0) {
    return {0.0, !tp_flags.empty()};
  }
  if (tp_flags.empty()) return {0.0, true};

  const std::size_t n = tp_flags.size();
  // Precision/recall after each prefix, with a leading recall-0 sentinel.
  std::vector<double> recall(n + 1, 0.0);
  std::vector<double> precision(n + 1, 1.0);
  int tp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (tp_flags[i]) ++tp;
    recall[i + 1] = static_cast<double>(tp) / num_gt;
    precision[i + 1] = static_cast<double>(tp) / static_cast<double>(i + 1);
  }
  // All-points envelope: precision at recall r is the best precision at any
  // operating point with recall >= r.
  for (std::size_t i = n; i-- > 0;) {
    precision[i] = std::max(precision[i], precision[i + 1]);
  }
  double ap = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (recall[i + 1] != recall[i]) {
      ap += (recall[i + 1] - recall[i]) * precision[i + 1];
    }
  }
  return {ap, true};
}

double mean_average_precision(const std::vector<double>& per_class_ap) {
  if (per_class_ap.empty()) {
    throw std::invalid_argument("mean over zero classes is undefined");
  }
  const double sum =
      std::accumulate(per_class_ap.begin(), per_class_ap.end(), 0.0);
  return sum / static_cast<double>(per_class_ap.size());
}

const std::vector<double>& coco_thresholds() {
  static const std::vector<double> kThresholds = [] {
    std::vector<double> t;
    // (50 + 5i) / 100 lands on the nearest double of each decimal rung, so
    // an iou that is mathematically 0.60 compares >= the 0.60 threshold.
    for (int i = 0; i < 10; ++i) t.push_back((50 + 5 * i) / 100.0);
    return t;
  }();
  return kThresholds;
}

double map_over_coco_range(const std::function<double(double)>& evaluate) {
  double sum = 0.0;
  for (double t : coco_thresholds()) sum += evaluate(t);
  return sum / static_cast<double>(coco_thresholds().size());
}

LatencyStats latency_stats(const std::vector<double>& per_image_ms) {
  if (per_image_ms.empty()) {
    throw std::invalid_argument("latency over zero samples is undefined");
  }
  for (double v : per_image_ms) {
    if (!(v > 0.0)) throw std::invalid_argument("latencies must be positive");
  }
  const double mean =
      std::accumulate(per_image_ms.begin(), per_image_ms.end(), 0.0) /
      static_cast<double>(per_image_ms.size());
  return {mean, 1000.0 / mean};
}

EvalReport evaluate_detections(const std::vector<Detection>& detections,
                               const std::vector<GroundTruthBox>& truths,
                               const std::vector<double>& thresholds,
                               bool include_gt_absent_classes) {
  if (thresholds.empty()) {
    throw std::invalid_argument("at least one iou threshold is required");
  }
  std::set<int> class_ids;
  for (const GroundTruthBox& g : truths) class_ids.insert(g.class_id);
  if (include_gt_absent_classes) {
    for (const Detection& d : detections) class_ids.insert(d.class_id);
  }

  EvalReport report;
  report.thresholds = thresholds;
  report.num_detections = static_cast<int>(detections.size());
  report.num_ground_truths = static_cast<int>(truths.size());

  std::map<int, std::vector<Detection>> dets_by_class;
  std::map<int, std::vector<GroundTruthBox>> gts_by_class;
  for (const Detection& d : detections) dets_by_class[d.class_id].push_back(d);
  for (const GroundTruthBox& g : truths) gts_by_class[g.class_id].push_back(g);

  for (int cid : class_ids) {
    const auto& class_dets = dets_by_class[cid];
    const auto& class_gts = gts_by_class[cid];
    ClassApRow row;
    row.class_id = cid;
    row.num_gt = static_cast<int>(class_gts.size());
    row.num_detections = static_cast<int>(class_dets.size());
    for (double t : thresholds) {
      const MatchOutcome match = match_detections(class_dets, class_gts, t);
      const ApResult ap = average_precision(match.tp_flags, row.num_gt);
      row.ap.push_back(ap.value);
      row.defined = row.defined && ap.defined;
    }
    report.per_class.push_back(std::move(row));
  }

  if (!report.per_class.empty()) {
    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
      std::vector<double> per_class;
      for (const ClassApRow& row : report.per_class)
        per_class.push_back(row.ap[ti]);
      report.map_per_threshold.push_back(mean_average_precision(per_class));
    }
    for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
      if (thresholds[ti] == 0.5) report.map50 = report.map_per_threshold[ti];
    }
    if (thresholds == coco_thresholds()) {
      report.map50_95 = mean_average_precision(report.map_per_threshold);
    }
  }
  return report;
}

}  // namespace slicedet
