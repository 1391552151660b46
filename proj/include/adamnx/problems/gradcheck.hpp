// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <span>
#include <vector>

#include "adamnx/problems/problem.hpp"

namespace adamnx {

/// Central differences (f(x + h e_i) - f(x - h e_i)) / (2h) of
/// problem.loss for every coordinate of every parameter.
std::vector<Tensor> fd_gradient(const Problem& problem,
                                std::span<const Tensor> params,
                                const Batch& batch, double h = 1e-5);

/// ||a - b||_2 / max(||a||_2, ||b||_2, floor) over all tensors jointly.
double gradient_relative_error(std::span<const Tensor> a,
                               std::span<const Tensor> b,
                               double floor = 1e-12);

}  // namespace adamnx
