// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/asff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slicedet {

Tensor3 resize_to(const Tensor3& x, int out_height, int out_width) {
  if (out_height <= 0 || out_width <= 0) {
    throw std::invalid_argument("resize target must be positive");
  }
  Tensor3 out(x.channels(), out_height, out_width);
  for (int c = 0; c < x.channels(); ++c) {
    for (int h = 0; h < out_height; ++h) {
      const int sh = static_cast<int>(static_cast<std::int64_t>(h) *
                                      x.height() / out_height);
      for (int w = 0; w < out_width; ++w) {
        const int sw = static_cast<int>(static_cast<std::int64_t>(w) *
                                        x.width() / out_width);
        out(c, h, w) = x(c, sh, sw);
      }
    }
  }
  return out;
}

FusionWeights normalize_fusion_weights(const std::array<Tensor3, 3>& logits) {
  for (const Tensor3& t : logits) {
    if (t.channels() != 1) {
      throw std::invalid_argument("fusion logits must be single-channel maps");
    }
    if (!t.same_shape(logits[0])) {
      throw std::invalid_argument("fusion logit shapes must match");
    }
  }
  const int height = logits[0].height();
  const int width = logits[0].width();
  FusionWeights out;
  out.height = height;
  out.width = width;
  for (auto& plane : out.planes)
    plane.assign(static_cast<std::size_t>(height) * width, 0.0);

  for (int h = 0; h < height; ++h) {
    for (int w = 0; w < width; ++w) {
      const double a = logits[0](0, h, w);
      const double b = logits[1](0, h, w);
      const double c = logits[2](0, h, w);
      const double m = std::max({a, b, c});  // stabilized softmax
      const double ea = std::exp(a - m);
      const double eb = std::exp(b - m);
      const double ec = std::exp(c - m);
      const double sum = ea + eb + ec;
      const std::size_t i = static_cast<std::size_t>(h) * width + w;
      out.planes[0][i] = ea / sum;
      out.planes[1][i] = eb / sum;
      out.planes[2][i] = ec / sum;
    }
  }
  return out;
}

Tensor3 asff_fuse(const Tensor3& x1, const Tensor3& x2, const Tensor3& x3,
                  const FusionWeights& weights) {
  if (!x1.same_shape(x2) || !x1.same_shape(x3)) {
    throw std::invalid_argument("fusion inputs must share shape");
  }
  if (weights.height != x1.height() || weights.width != x1.width()) {
    throw std::invalid_argument("fusion weights do not match input shape");
  }
  Tensor3 out(x1.channels(), x1.height(), x1.width());
  for (int c = 0; c < x1.channels(); ++c) {
    for (int h = 0; h < x1.height(); ++h) {
      for (int w = 0; w < x1.width(); ++w) {
        out(c, h, w) = weights.at(0, h, w) * x1(c, h, w) +
                       weights.at(1, h, w) * x2(c, h, w) +
                       weights.at(2, h, w) * x3(c, h, w);
      }
    }
  }
  return out;
}

}  // namespace slicedet
