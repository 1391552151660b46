// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/problems/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "adamnx/errors.hpp"

namespace adamnx {

std::vector<Tensor> fd_gradient(const Problem& problem,
                                std::span<const Tensor> params,
                                const Batch& batch, double h) {
  if (!(h > 0.0)) throw DomainError("fd_gradient: h must be positive");
  std::vector<Tensor> probe(params.begin(), params.end());
  std::vector<Tensor> grads;
  grads.reserve(params.size());
  for (std::size_t l = 0; l < probe.size(); ++l) {
    Tensor g = Tensor::zeros_like(probe[l]);
    for (std::size_t i = 0; i < probe[l].size(); ++i) {
      const double x = probe[l][i];
      probe[l][i] = x + h;
      const double f_plus = problem.loss(probe, batch);
      probe[l][i] = x - h;
      const double f_minus = problem.loss(probe, batch);
      probe[l][i] = x;
      g[i] = (f_plus - f_minus) / (2.0 * h);
    }
    grads.push_back(std::move(g));
  }
  return grads;
}

double gradient_relative_error(std::span<const Tensor> a,
                               std::span<const Tensor> b, double floor) {
  if (a.size() != b.size()) throw ShapeMismatch("gradient lists differ in length");
  double diff2 = 0.0;
  double a2 = 0.0;
  double b2 = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (!a[l].same_shape(b[l])) {
      throw ShapeMismatch("gradient shapes differ at " + std::to_string(l));
    }
    for (std::size_t i = 0; i < a[l].size(); ++i) {
      const double d = a[l][i] - b[l][i];
      diff2 += d * d;
      a2 += a[l][i] * a[l][i];
      b2 += b[l][i] * b[l][i];
    }
  }
  const double denom = std::max({std::sqrt(a2), std::sqrt(b2), floor});
  return std::sqrt(diff2) / denom;
}

}  // namespace adamnx
