// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <span>

#include "adamnx/numerics/tensor.hpp"

namespace adamnx {

/// Fraction of rows whose label is not among the k largest scores.
///
/// A label's rank counts the classes scoring strictly higher plus the tied
/// classes with a lower index, so ties go to the lowest class index.
double topk_error(const Tensor& probs, std::span<const int> labels,
                  std::size_t k);

}  // namespace adamnx
