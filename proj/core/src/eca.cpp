// Copyright (c) 2026 The slicedet Authors
// SPDX-License-Identifier: Apache-2.0

#include "slicedet/eca.hpp"

#include <cmath>
#include <stdexcept>

namespace slicedet {

Conv1dKernel Conv1dKernel::identity(int k) {
  if (k < 1 || k % 2 == 0) {
    throw std::invalid_argument("kernel size must be odd and positive");
  }
  Conv1dKernel kernel;
  kernel.k = k;
  kernel.weights.assign(static_cast<std::size_t>(k), 0.0);
  kernel.weights[static_cast<std::size_t>(k / 2)] = 1.0;
  return kernel;
}

int eca_kernel_size(int channels, const EcaConfig& config) {
  if (channels < 1) throw std::invalid_argument("channels must be >= 1");
  if (config.gamma == 0.0) throw std::invalid_argument("gamma must be nonzero");
  const double t_raw =
      std::floor(std::abs((std::log2(static_cast<double>(channels)) +
                           config.b) /
                          config.gamma));
  int k = static_cast<int>(t_raw);
  if (k % 2 == 0) ++k;
  if (k < 3) k = 3;
  return k;
}

std::vector<double> global_avg_pool(const Tensor3& x) {
  std::vector<double> means(static_cast<std::size_t>(x.channels()), 0.0);
  const double denom = static_cast<double>(x.height()) * x.width();
  for (int c = 0; c < x.channels(); ++c) {
    double sum = 0.0;
    for (int h = 0; h < x.height(); ++h)
      for (int w = 0; w < x.width(); ++w) sum += x(c, h, w);
    means[static_cast<std::size_t>(c)] = sum / denom;
  }
  return means;
}

std::vector<double> conv1d_same(const std::vector<double>& v,
                                const Conv1dKernel& kernel) {
  if (kernel.k < 1 || kernel.k % 2 == 0 ||
      kernel.weights.size() != static_cast<std::size_t>(kernel.k)) {
    throw std::invalid_argument("kernel size must be odd and match weights");
  }
  const int n = static_cast<int>(v.size());
  const int half = kernel.k / 2;
  std::vector<double> out(v.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = -half; j <= half; ++j) {
      const int src = i + j;
      if (src < 0 || src >= n) continue;  // zero padding
      acc += kernel.weights[static_cast<std::size_t>(j + half)] *
             v[static_cast<std::size_t>(src)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

Tensor3 eca_forward(const Tensor3& x, const Conv1dKernel& kernel) {
  const std::vector<double> pooled = global_avg_pool(x);
  const std::vector<double> mixed = conv1d_same(pooled, kernel);
  Tensor3 out(x.channels(), x.height(), x.width());
  for (int c = 0; c < x.channels(); ++c) {
    const double gate =
        1.0 / (1.0 + std::exp(-mixed[static_cast<std::size_t>(c)]));
    for (int h = 0; h < x.height(); ++h)
      for (int w = 0; w < x.width(); ++w) out(c, h, w) = gate * x(c, h, w);
  }
  return out;
}

}  // namespace slicedet
