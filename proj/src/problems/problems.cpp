// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include <cmath>

#include "adamnx/errors.hpp"
#include "adamnx/problems/problem.hpp"

namespace adamnx {
namespace {

const Tensor& single_param(std::span<const Tensor> params, std::size_t dim,
                           const char* who) {
  if (params.size() != 1 || params[0].size() != dim) {
    throw ShapeMismatch(std::string(who) + ": expected one parameter of " +
                        std::to_string(dim) + " elements");
  }
  return params[0];
}

class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(std::size_t dim, double condition) : diag_(dim) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double frac =
          dim == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(dim - 1);
      diag_[i] = std::pow(condition, frac);
    }
  }

  std::string name() const override { return "quadratic"; }

  std::vector<Tensor> parameter_template() const override {
    return {Tensor({diag_.size()}, 0.0)};
  }

  std::vector<Tensor> initial_params(Rng&) const override {
    return {Tensor({diag_.size()}, 1.0)};
  }

  double loss(std::span<const Tensor> params, const Batch&) const override {
    const Tensor& x = single_param(params, diag_.size(), "quadratic");
    double f = 0.0;
    for (std::size_t i = 0; i < diag_.size(); ++i) f += diag_[i] * x[i] * x[i];
    return 0.5 * f;
  }

  LossAndGrad loss_and_grad(std::span<const Tensor> params,
                            const Batch& batch) const override {
    const Tensor& x = single_param(params, diag_.size(), "quadratic");
    Tensor g = Tensor::zeros_like(x);
    for (std::size_t i = 0; i < diag_.size(); ++i) g[i] = diag_[i] * x[i];
    return {loss(params, batch), {std::move(g)}};
  }

 private:
  std::vector<double> diag_;
};

class RosenbrockProblem final : public Problem {
 public:
  explicit RosenbrockProblem(std::size_t n) : n_(n) {}

  std::string name() const override { return "rosenbrock"; }

  std::vector<Tensor> parameter_template() const override {
    return {Tensor({n_}, 0.0)};
  }

  std::vector<Tensor> initial_params(Rng&) const override {
    Tensor x({n_}, 1.0);
    for (std::size_t i = 0; i < n_; i += 2) x[i] = -1.2;
    return {x};
  }

  double loss(std::span<const Tensor> params, const Batch&) const override {
    const Tensor& x = single_param(params, n_, "rosenbrock");
    double f = 0.0;
    for (std::size_t i = 0; i < n_; i += 2) {
      const double a = 1.0 - x[i];
      const double b = x[i + 1] - x[i] * x[i];
      f += 100.0 * b * b + a * a;
    }
    return f;
  }

  LossAndGrad loss_and_grad(std::span<const Tensor> params,
                            const Batch& batch) const override {
    const Tensor& x = single_param(params, n_, "rosenbrock");
    Tensor g = Tensor::zeros_like(x);
    for (std::size_t i = 0; i < n_; i += 2) {
      const double b = x[i + 1] - x[i] * x[i];
      g[i] = -400.0 * x[i] * b - 2.0 * (1.0 - x[i]);
      g[i + 1] = 200.0 * b;
    }
    return {loss(params, batch), {std::move(g)}};
  }

 private:
  std::size_t n_;
};

}  // namespace

ProblemPtr quadratic_problem(std::size_t dim, double condition_number) {
  if (dim < 1) throw DomainError("quadratic_problem: dim must be >= 1");
  if (!(condition_number >= 1.0) || !std::isfinite(condition_number)) {
    throw DomainError("quadratic_problem: condition_number must be >= 1");
  }
  return std::make_shared<QuadraticProblem>(dim, condition_number);
}

ProblemPtr rosenbrock_problem(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw DomainError("rosenbrock_problem: n must be even and >= 2");
  }
  return std::make_shared<RosenbrockProblem>(n);
}

}  // namespace adamnx
