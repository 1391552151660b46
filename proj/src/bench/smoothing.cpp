// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/bench/smoothing.hpp"

#include <algorithm>

#include "adamnx/errors.hpp"

namespace adamnx::bench {

SmoothingParams smoothing_params(std::uint64_t total_steps) {
  SmoothingParams p;
  p.step = std::max<std::uint64_t>(1, total_steps / 400);
  p.window = std::max(5.0, 0.02 * static_cast<double>(p.step));
  p.alpha = 2.0 / (p.window + 1.0);
  return p;
}

std::vector<double> ewma_adjusted(std::span<const double> values,
                                  double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("ewma alpha must lie in (0, 1]");
  }
  // Numerator and denominator recursions of the normalized weighted sum.
  std::vector<double> out;
  out.reserve(values.size());
  const double keep = 1.0 - alpha;
  double num = 0.0;
  double den = 0.0;
  for (double x : values) {
    num = keep * num + x;
    den = keep * den + 1.0;
    out.push_back(num / den);
  }
  return out;
}

std::vector<double> smooth_series(std::span<const double> values,
                                  std::uint64_t total_steps) {
  const SmoothingParams p = smoothing_params(total_steps);
  std::vector<double> sampled;
  for (std::size_t i = 0; i < values.size(); i += p.step) {
    sampled.push_back(values[i]);
  }
  return ewma_adjusted(sampled, p.alpha);
}

}  // namespace adamnx::bench
