// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_LOSSES_HPP_
#define SLICEDET_LOSSES_HPP_

#include "slicedet/geometry.hpp"

namespace slicedet {

// Focusing parameters for the down-weighted cross-entropy variants.
// focal default alpha = 0.25; the quality-branch default is alpha = 0.75.
struct FocalConfig {
  double alpha = 0.25;
  double gamma = 2.0;
};

inline constexpr FocalConfig kFocalDefaults{0.25, 2.0};
inline constexpr FocalConfig kVarifocalDefaults{0.75, 2.0};

// Binary cross-entropy on a probability. y must be 0 or 1; y_hat is clamped
// to [1e-12, 1 - 1e-12] before the log, as are all losses in this header.
double bce_loss(double y_hat, int y);

// Cross-entropy down-weighted by (1 - p_t)^gamma, with alpha on positives
// and (1 - alpha) on negatives.
double focal_loss(double y_hat, int y, const FocalConfig& config = kFocalDefaults);

// Quality-aware variant. For targets q > 0 the sample is a positive weighted
// by q with soft target q; for q = 0 it decays like the focal negative branch
// with p_t taken to be y_hat itself.
double varifocal_loss(double y_hat, double q,
                      const FocalConfig& config = kVarifocalDefaults);

// Analytic d(loss)/d(y_hat) for the three losses above.
double bce_loss_grad(double y_hat, int y);
double focal_loss_grad(double y_hat, int y,
                       const FocalConfig& config = kFocalDefaults);
double varifocal_loss_grad(double y_hat, double q,
                           const FocalConfig& config = kVarifocalDefaults);

// Box regression losses: 1 - iou in [0, 1], 1 - giou in [0, 2].
double iou_loss(const BoundingBox& predicted, const BoundingBox& target);
double giou_loss(const BoundingBox& predicted, const BoundingBox& target);

// Central finite difference, the verification oracle for the gradients.
template <typename F>
double finite_diff_grad(F&& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace slicedet

#endif  // SLICEDET_LOSSES_HPP_
