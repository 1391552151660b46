// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace adamnx::bench {

/// Downsampling and smoothing constants for a run of `total_steps` steps:
/// step = max(1, total_steps / 400), window = max(5, 0.02 step),
/// alpha = 2 / (window + 1).
struct SmoothingParams {
  std::uint64_t step = 1;
  double window = 5.0;
  double alpha = 1.0 / 3.0;
};

SmoothingParams smoothing_params(std::uint64_t total_steps);

/// Exponentially weighted mean normalized by the partial weight sum:
/// y_k = sum_i (1-alpha)^i x_{k-i} / sum_i (1-alpha)^i.
std::vector<double> ewma_adjusted(std::span<const double> values, double alpha);

/// Keeps every step-th value starting at index 0, then applies
/// ewma_adjusted with the alpha from smoothing_params(total_steps).
std::vector<double> smooth_series(std::span<const double> values,
                                  std::uint64_t total_steps);

}  // namespace adamnx::bench
