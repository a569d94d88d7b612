// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SLICEDET_ECA_HPP_
#define SLICEDET_ECA_HPP_

#include <vector>

#include "slicedet/tensor.hpp"

namespace slicedet {

// Kernel-size rule parameters for the channel-attention gate.
struct EcaConfig {
  double gamma = 2.0;
  double b = 1.0;
};

// Shared-weight 1D convolution kernel; k must be odd and positive.
struct Conv1dKernel {
  int k = 3;
  std::vector<double> weights;

  static Conv1dKernel identity(int k);
};

// Adaptive kernel size: t = floor(|(log2(C) + b) / gamma|), bumped to the
// next odd number when even, floored at 3. Requires channels >= 1.
int eca_kernel_size(int channels, const EcaConfig& config = {});

// Per-channel spatial mean, length C.
std::vector<double> global_avg_pool(const Tensor3& x);

// Same-length 1D convolution with zero padding at both ends.
std::vector<double> conv1d_same(const std::vector<double>& v,
                                const Conv1dKernel& kernel);

// Channel attention: sigmoid(conv1d(GAP(x))) scales each channel of x.
// Output magnitudes never exceed the input, and signs are preserved.
Tensor3 eca_forward(const Tensor3& x, const Conv1dKernel& kernel);

}  // namespace slicedet

#endif  // SLICEDET_ECA_HPP_
