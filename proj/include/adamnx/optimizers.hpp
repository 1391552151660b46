// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adamnx/numerics/tensor.hpp"
#include "adamnx/schedules.hpp"

namespace adamnx {

enum class OptimizerRule {
  GeneralizedAdam,
  AdamClassic,
  AdamW,
  SGD,
  MomentumSGD,
  RAdam,
  Lion,
};

std::string_view to_string(OptimizerRule rule);

/// Hyperparameters of one optimizer.
///
/// `schedule` carries beta1 and beta2 for every Adam-like rule and for Lion.
/// Only GeneralizedAdam reads the schedule family; the other rules read the
/// two coefficients as plain constants.
struct OptimizerConfig {
  OptimizerRule rule = OptimizerRule::GeneralizedAdam;
  DecaySchedule schedule = DecaySchedule::adamnx();
  LrSchedule lr = LrSchedule::fixed(1e-3);
  double lambda = 0.0;
  double eps = 1e-8;
  double mu = 0.9;

  /// GeneralizedAdam driven by the AdamNX schedule, (beta1, beta2) = (0.9, 0.99).
  static OptimizerConfig adamnx(LrSchedule lr);
  static OptimizerConfig generalized(DecaySchedule schedule, LrSchedule lr);
  static OptimizerConfig adam(LrSchedule lr, double beta1 = 0.9,
                              double beta2 = 0.999);
  static OptimizerConfig adamw(LrSchedule lr, double lambda,
                               double beta1 = 0.9, double beta2 = 0.999);
  static OptimizerConfig sgd(LrSchedule lr);
  static OptimizerConfig momentum_sgd(LrSchedule lr, double mu = 0.9);
  static OptimizerConfig radam(LrSchedule lr, double beta1 = 0.9,
                               double beta2 = 0.999);
  static OptimizerConfig lion(LrSchedule lr, double beta1 = 0.9,
                              double beta2 = 0.99);
};

std::vector<std::string> validation_issues(const OptimizerConfig& cfg);

/// First and second moment buffers of one parameter. SGD leaves both
/// untouched, MomentumSGD keeps its velocity in `m`, Lion uses only `m`.
struct MomentSlot {
  Tensor m;
  Tensor v;
};

struct OptimizerState {
  std::vector<MomentSlot> slots;
  /// Number of completed steps; the first update runs with t = 1.
  std::uint64_t t = 0;
  double best_loss = std::numeric_limits<double>::infinity();
  std::vector<Tensor> best_params;
  /// Step whose loss set best_loss; 0 before any improvement.
  std::uint64_t best_step = 0;

  static OptimizerState for_params(std::span<const Tensor> params);
};

/// What a single step did, for logging.
struct StepReport {
  std::uint64_t t = 0;
  double lr = 0.0;
  /// Effective second-moment decay used at this step, if the rule has one.
  std::optional<double> beta2_hat;
  /// max|v_t - v_{t-1}| / (max|v_t| + eps) over all parameters.
  std::optional<double> v_rel_change;
};

// Every step function validates its inputs before touching any state: the
// parameter, gradient and slot lists must line up in count and shape
// (ShapeMismatch), every gradient element must be finite (NonFiniteGradient
// carrying the step that would have run), and cfg.rule must match the
// function (DomainError). Parameters are updated in place.
//
// Decoupled weight decay subtracts lr * lambda * theta and applies only to
// Matrix-kind parameters, except under AdamW where it applies to all.

/// Schedule-driven Adam:
///   m <- b1(t) m + (1 - b1(t)) g
///   v <- b2(t) v + (1 - b2(t)) g^2
///   theta <- theta - lr (m / (sqrt(v) + eps) + lambda_l theta)
/// With the AdamNX schedule this is AdamNX; with AdamClassic it reproduces
/// bias-corrected Adam.
StepReport step_generalized_adam(OptimizerState& state,
                                 std::span<Tensor> params,
                                 std::span<const Tensor> grads,
                                 const OptimizerConfig& cfg);

/// Adam with explicit bias correction of both moments.
StepReport step_adam_classic(OptimizerState& state, std::span<Tensor> params,
                             std::span<const Tensor> grads,
                             const OptimizerConfig& cfg);

/// step_adam_classic with weight decay on every parameter kind.
StepReport step_adamw(OptimizerState& state, std::span<Tensor> params,
                      std::span<const Tensor> grads,
                      const OptimizerConfig& cfg);

StepReport step_sgd(OptimizerState& state, std::span<Tensor> params,
                    std::span<const Tensor> grads, const OptimizerConfig& cfg);

/// Heavy ball: b <- mu b + g; theta <- theta - lr (b + lambda_l theta).
StepReport step_momentum_sgd(OptimizerState& state, std::span<Tensor> params,
                             std::span<const Tensor> grads,
                             const OptimizerConfig& cfg);

/// Rectified Adam. Takes the adaptive step scaled by the variance rectifier
/// when rho_t > 4, and the bias-corrected momentum step otherwise.
StepReport step_radam(OptimizerState& state, std::span<Tensor> params,
                      std::span<const Tensor> grads,
                      const OptimizerConfig& cfg);

/// Sign momentum: c = b1 m + (1 - b1) g; theta -= lr (sign(c) + lambda_l
/// theta); m <- b2 m + (1 - b2) g.
StepReport step_lion(OptimizerState& state, std::span<Tensor> params,
                     std::span<const Tensor> grads, const OptimizerConfig& cfg);

/// Dispatches on cfg.rule.
StepReport step(OptimizerState& state, std::span<Tensor> params,
                std::span<const Tensor> grads, const OptimizerConfig& cfg);

/// RAdam's length of the approximated simple moving average at step t.
double radam_rho(double beta2, std::uint64_t t);

/// Keeps the strictly best loss seen so far with a deep copy of params.
/// Returns true when the snapshot was replaced.
bool track_best(OptimizerState& state, double loss,
                std::span<const Tensor> params);

}  // namespace adamnx
