// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_ASFF_HPP_
#define SLICEDET_ASFF_HPP_

#include <array>

#include "slicedet/tensor.hpp"

namespace slicedet {

// Per-pixel convex weights for fusing three feature maps. Each of the three
// planes is H x W; after normalization the planes sum to 1 at every pixel.
struct FusionWeights {
  int height = 0;
  int width = 0;
  std::array<std::vector<double>, 3> planes;

  double at(int plane, int h, int w) const {
    return planes[static_cast<std::size_t>(plane)]
                 [static_cast<std::size_t>(h) * width + w];
  }
};

// Nearest-neighbor resample of every channel to (out_height, out_width);
// destination index d reads source floor(d * src_extent / dst_extent).
// Downscaling an exact 2x upscale reproduces the original bit for bit.
Tensor3 resize_to(const Tensor3& x, int out_height, int out_width);

// Pointwise softmax over three logit planes of identical shape.
FusionWeights normalize_fusion_weights(const std::array<Tensor3, 3>& logits);

// Convex combination out = a*x1 + b*x2 + c*x3 with weights broadcast over
// channels. Inputs must share shape and match the weight planes. Output is
// pointwise bounded by the input min/max across the three maps.
Tensor3 asff_fuse(const Tensor3& x1, const Tensor3& x2, const Tensor3& x3,
                  const FusionWeights& weights);

}  // namespace slicedet

#endif  // SLICEDET_ASFF_HPP_
