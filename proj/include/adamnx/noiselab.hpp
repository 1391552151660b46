// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "adamnx/numerics/rng.hpp"
#include "adamnx/numerics/tensor.hpp"
#include "adamnx/schedules.hpp"

namespace adamnx {

/// Stochastic gradient stream g_t = grad_f(t) + sigma * xi_t with xi_t
/// standard normal, i.i.d. over coordinates and time.
struct NoiseModel {
  double sigma = 1.0;
  std::size_t dim = 1;
  /// Writes the deterministic gradient at step t into `out` (size dim).
  std::function<void(std::uint64_t t, std::span<double> out)> full_grad;
  /// When set, full_grad is evaluated once and reused for every step.
  bool time_invariant = false;

  /// Every coordinate of the deterministic gradient equals g.
  static NoiseModel constant(double g, double sigma, std::size_t dim);
};

Tensor noisy_grad(const NoiseModel& model, std::uint64_t t, Rng& rng);

/// Plain EMA with explicit bias correction: v_t = b2 v + (1 - b2) g^2 and
/// the reported estimate is v_t / (1 - b2^t).
struct FixedBeta2 {
  double beta2 = 0.999;
};

/// How a chain evolves its second moment: schedule-driven recursion (the
/// estimate is the raw buffer) or fixed-beta2 with bias correction.
using ChainMode = std::variant<DecaySchedule, FixedBeta2>;

/// Bias-corrected second-moment estimates for t = 1..T of a single chain.
std::vector<Tensor> second_moment_chain(const NoiseModel& model,
                                        const ChainMode& mode, std::uint64_t T,
                                        Rng& rng);

/// Per-coordinate moments of the estimate at t over independent chains.
struct ChainStats {
  std::uint64_t t = 0;
  Tensor empirical_mean;
  /// Unbiased (n - 1) divisor.
  Tensor empirical_var;
  std::size_t n_chains = 0;

  /// Coordinate averages; coordinates are i.i.d. under the noise model.
  double mean_over_dims() const;
  double var_over_dims() const;
};

/// Runs n_chains chains to t_probe. Chain i draws its noise from
/// master.derive(i), so every mode sees the same noise stream and results
/// do not depend on `workers`. Requires n_chains >= 2 and t_probe >= 1.
std::vector<ChainStats> mc_moments(const NoiseModel& model,
                                   std::span<const ChainMode> modes,
                                   std::uint64_t t_probe, std::size_t n_chains,
                                   const Rng& master, std::size_t workers = 1);

ChainStats mc_moments(const NoiseModel& model, const ChainMode& mode,
                      std::uint64_t t_probe, std::size_t n_chains,
                      const Rng& master, std::size_t workers = 1);

/// E[v_hat_t] for a constant gradient of magnitude g: sigma^2 + g^2 at
/// every t.
double closed_form_exp(double beta2, double sigma, double g, std::uint64_t t);

/// Var[v_hat_t] for a constant gradient g:
///   (1-b2)^2 (1 - b2^{2t}) / ((1 - b2^2)(1 - b2^t)^2) * (2 sigma^4 + 4 sigma^2 g^2)
double closed_form_var(double beta2, double sigma, double g, std::uint64_t t);

/// lim_{t->inf} Var[v_hat_t] = (1 - b2)/(1 + b2) * (2 sigma^4 + 4 sigma^2 g^2).
double closed_form_var_limit(double beta2, double sigma, double g);

}  // namespace adamnx
