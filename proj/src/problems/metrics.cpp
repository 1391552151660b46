// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/problems/metrics.hpp"

#include <cmath>

#include "adamnx/errors.hpp"

namespace adamnx {

double topk_error(const Tensor& probs, std::span<const int> labels,
                  std::size_t k) {
  if (probs.rank() != 2) throw ShapeMismatch("topk_error: probs must be n x C");
  const std::size_t n = probs.rows();
  const std::size_t classes = probs.cols();
  if (labels.size() != n) {
    throw ShapeMismatch("topk_error: " + std::to_string(n) + " rows but " +
                        std::to_string(labels.size()) + " labels");
  }
  if (k < 1 || k > classes) throw DomainError("topk_error: k must lie in [1, C]");
  if (!probs.all_finite()) throw NonFiniteInput("topk_error: non-finite score");

  std::size_t misses = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const int label = labels[r];
    if (label < 0 || static_cast<std::size_t>(label) >= classes) {
      throw DomainError("topk_error: label out of range");
    }
    const auto y = static_cast<std::size_t>(label);
    const double target = probs.at(r, y);
    std::size_t rank = 0;
    for (std::size_t j = 0; j < classes; ++j) {
      const double p = probs.at(r, j);
      if (p > target || (p == target && j < y)) ++rank;
    }
    if (rank >= k) ++misses;
  }
  return static_cast<double>(misses) / static_cast<double>(n);
}

}  // namespace adamnx
