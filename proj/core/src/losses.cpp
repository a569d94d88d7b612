// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicedet {

namespace {

constexpr double kEps = 1e-12;

double clamp_prob(double p) { return std::clamp(p, kEps, 1.0 - kEps); }

void check_label(int y) {
  if (y != 0 && y != 1) throw std::invalid_argument("label must be 0 or 1");
}

void check_quality(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("quality target must be in [0, 1]");
}

}  // namespace

double bce_loss(double y_hat, int y) {
  check_label(y);
  const double p = clamp_prob(y_hat);
  return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

double focal_loss(double y_hat, int y, const FocalConfig& config) {
  check_label(y);
  const double p = clamp_prob(y_hat);
  if (y == 1) {
    return -config.alpha * std::pow(1.0 - p, config.gamma) * std::log(p);
  }
  return -(1.0 - config.alpha) * std::pow(p, config.gamma) *
         std::log(1.0 - p);
}

double varifocal_loss(double y_hat, double q, const FocalConfig& config) {
  check_quality(q);
  const double p = clamp_prob(y_hat);
  if (q > 0.0) {
    return -q * (q * std::log(p) + (1.0 - q) * std::log(1.0 - p));
  }
  return -config.alpha * std::pow(p, config.gamma) * std::log(1.0 - p);
}

double bce_loss_grad(double y_hat, int y) {
  check_label(y);
  const double p = clamp_prob(y_hat);
  return y == 1 ? -1.0 / p : 1.0 / (1.0 - p);
}

double focal_loss_grad(double y_hat, int y, const FocalConfig& config) {
  check_label(y);
  const double p = clamp_prob(y_hat);
  const double g = config.gamma;
  if (y == 1) {
    // d/dp of -a (1-p)^g log p; the g term vanishes identically when g = 0.
    const double focus = g == 0.0 ? 0.0
                                  : g * std::pow(1.0 - p, g - 1.0) *
                                        std::log(p);
    return config.alpha * (focus - std::pow(1.0 - p, g) / p);
  }
  const double focus =
      g == 0.0 ? 0.0 : g * std::pow(p, g - 1.0) * std::log(1.0 - p);
  return -(1.0 - config.alpha) *
         (focus - std::pow(p, g) / (1.0 - p));
}

double varifocal_loss_grad(double y_hat, double q, const FocalConfig& config) {
  check_quality(q);
  const double p = clamp_prob(y_hat);
  if (q > 0.0) {
    return -q * (q / p - (1.0 - q) / (1.0 - p));
  }
  const double g = config.gamma;
  const double focus =
      g == 0.0 ? 0.0 : g * std::pow(p, g - 1.0) * std::log(1.0 - p);
  return -config.alpha * (focus - std::pow(p, g) / (1.0 - p));
}

double iou_loss(const BoundingBox& predicted, const BoundingBox& target) {
  return 1.0 - iou(predicted, target);
}

double giou_loss(const BoundingBox& predicted, const BoundingBox& target) {
  return 1.0 - giou(predicted, target);
}

}  // namespace slicedet
