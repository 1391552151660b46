// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adamnx/numerics/rng.hpp"
#include "adamnx/numerics/tensor.hpp"
#include "adamnx/problems/dataset.hpp"

namespace adamnx {

struct LossAndGrad {
  double loss = 0.0;
  std::vector<Tensor> grads;
};

/// Differentiable objective. Instances are immutable after construction and
/// may be shared between concurrent runs.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  /// Zero-filled tensors with the parameter shapes (and thus kinds).
  virtual std::vector<Tensor> parameter_template() const = 0;
  virtual std::vector<Tensor> initial_params(Rng& rng) const = 0;

  virtual LossAndGrad loss_and_grad(std::span<const Tensor> params,
                                    const Batch& batch) const = 0;
  /// Forward pass only.
  virtual double loss(std::span<const Tensor> params,
                      const Batch& batch) const = 0;

  /// Non-null for problems trained on mini-batches.
  virtual const Dataset* dataset() const { return nullptr; }
  /// Row-wise class probabilities (n x C) for classification problems.
  virtual std::optional<Tensor> predict_probs(std::span<const Tensor> params,
                                              const Tensor& features) const {
    (void)params;
    (void)features;
    return std::nullopt;
  }
};

using ProblemPtr = std::shared_ptr<const Problem>;

/// f(theta) = 0.5 theta^T D theta with D = diag(condition^{i/(dim-1)}),
/// i.e. eigenvalues log-spaced from 1 to condition_number. Starts at all
/// ones.
ProblemPtr quadratic_problem(std::size_t dim, double condition_number);

/// Sum over disjoint pairs (x_{2k}, x_{2k+1}) of
/// 100 (x_{2k+1} - x_{2k}^2)^2 + (1 - x_{2k})^2. n must be even and >= 2.
/// Starts at (-1.2, 1, -1.2, 1, ...).
ProblemPtr rosenbrock_problem(std::size_t n);

/// Multinomial logistic regression, softmax cross-entropy averaged over the
/// batch plus 0.5 * l2 * ||W||^2. Parameters: W (d x C, Matrix) and
/// b (C, NonMatrix). Starts at zero.
ProblemPtr logreg_problem(std::shared_ptr<const Dataset> dataset,
                          double l2 = 0.0);

/// Fully connected tanh network ending in a softmax cross-entropy layer.
/// Parameters alternate W_k (fan_in x fan_out, Matrix) and b_k (fan_out,
/// NonMatrix). Weights start uniform in +-1/sqrt(fan_in), biases at zero.
ProblemPtr mlp_problem(std::shared_ptr<const Dataset> dataset,
                       std::vector<std::size_t> hidden_sizes);

}  // namespace adamnx
