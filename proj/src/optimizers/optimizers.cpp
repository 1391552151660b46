// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/optimizers.hpp"

#include <algorithm>
#include <cmath>

#include "adamnx/errors.hpp"

namespace adamnx {
namespace {

void require_rule(const OptimizerConfig& cfg, OptimizerRule expected) {
  if (cfg.rule != expected) {
    throw DomainError("optimizer step for " + std::string(to_string(expected)) +
                      " called with rule " + std::string(to_string(cfg.rule)));
  }
}

void check_inputs(const OptimizerState& state, std::span<const Tensor> params,
                  std::span<const Tensor> grads) {
  if (params.size() != grads.size() || params.size() != state.slots.size()) {
    throw ShapeMismatch("optimizer step: " + std::to_string(params.size()) +
                        " params, " + std::to_string(grads.size()) +
                        " grads, " + std::to_string(state.slots.size()) +
                        " slots");
  }
  for (std::size_t l = 0; l < params.size(); ++l) {
    if (!params[l].same_shape(grads[l]) ||
        !params[l].same_shape(state.slots[l].m) ||
        !params[l].same_shape(state.slots[l].v)) {
      throw ShapeMismatch("optimizer step: shape mismatch at parameter " +
                          std::to_string(l));
    }
  }
  for (std::size_t l = 0; l < grads.size(); ++l) {
    if (!grads[l].all_finite()) {
      throw NonFiniteGradient(
          state.t + 1, "non-finite gradient for parameter " +
                           std::to_string(l) + " at step " +
                           std::to_string(state.t + 1));
    }
  }
}

double decay_rate(const OptimizerConfig& cfg, const Tensor& param) {
  if (cfg.rule == OptimizerRule::AdamW) return cfg.lambda;
  return param.kind() == ParamKind::Matrix ? cfg.lambda : 0.0;
}

// Running maxima for StepReport::v_rel_change.
class SecondMomentMotion {
 public:
  void observe(double before, double after) {
    max_delta_ = std::max(max_delta_, std::fabs(after - before));
    max_v_ = std::max(max_v_, std::fabs(after));
  }
  double relative(double eps) const { return max_delta_ / (max_v_ + eps); }

 private:
  double max_delta_ = 0.0;
  double max_v_ = 0.0;
};

StepReport adam_classic_impl(OptimizerState& state, std::span<Tensor> params,
                             std::span<const Tensor> grads,
                             const OptimizerConfig& cfg) {
  check_inputs(state, params, grads);
  const std::uint64_t t = state.t + 1;
  const double b1 = cfg.schedule.beta1;
  const double b2 = cfg.schedule.beta2;
  const double td = static_cast<double>(t);
  const double correction1 = 1.0 - std::pow(b1, td);
  const double correction2 = 1.0 - std::pow(b2, td);
  const double lr = lr_at(cfg.lr, t);

  SecondMomentMotion motion;
  for (std::size_t l = 0; l < params.size(); ++l) {
    auto theta = params[l].data();
    auto g = grads[l].data();
    auto m = state.slots[l].m.data();
    auto v = state.slots[l].v.data();
    const double lambda = decay_rate(cfg, params[l]);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * g[i];
      const double v_old = v[i];
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
      motion.observe(v_old, v[i]);
      const double m_hat = m[i] / correction1;
      const double v_hat = v[i] / correction2;
      theta[i] -= lr * (m_hat / (std::sqrt(v_hat) + cfg.eps) + lambda * theta[i]);
    }
  }
  state.t = t;
  return {t, lr, (b2 - std::pow(b2, td)) / correction2, motion.relative(cfg.eps)};
}

}  // namespace

std::string_view to_string(OptimizerRule rule) {
  switch (rule) {
    case OptimizerRule::GeneralizedAdam: return "generalized_adam";
    case OptimizerRule::AdamClassic: return "adam_classic";
    case OptimizerRule::AdamW: return "adamw";
    case OptimizerRule::SGD: return "sgd";
    case OptimizerRule::MomentumSGD: return "momentum_sgd";
    case OptimizerRule::RAdam: return "radam";
    case OptimizerRule::Lion: return "lion";
  }
  return "unknown";
}

OptimizerConfig OptimizerConfig::adamnx(LrSchedule lr) {
  return generalized(DecaySchedule::adamnx(), lr);
}

OptimizerConfig OptimizerConfig::generalized(DecaySchedule schedule,
                                             LrSchedule lr) {
  OptimizerConfig cfg;
  cfg.rule = OptimizerRule::GeneralizedAdam;
  cfg.schedule = schedule;
  cfg.lr = lr;
  return cfg;
}

OptimizerConfig OptimizerConfig::adam(LrSchedule lr, double beta1,
                                      double beta2) {
  OptimizerConfig cfg;
  cfg.rule = OptimizerRule::AdamClassic;
  cfg.schedule = DecaySchedule::adam_classic(beta1, beta2);
  cfg.lr = lr;
  return cfg;
}

OptimizerConfig OptimizerConfig::adamw(LrSchedule lr, double lambda,
                                       double beta1, double beta2) {
  OptimizerConfig cfg = adam(lr, beta1, beta2);
  cfg.rule = OptimizerRule::AdamW;
  cfg.lambda = lambda;
  return cfg;
}

OptimizerConfig OptimizerConfig::sgd(LrSchedule lr) {
  OptimizerConfig cfg;
  cfg.rule = OptimizerRule::SGD;
  cfg.lr = lr;
  return cfg;
}

OptimizerConfig OptimizerConfig::momentum_sgd(LrSchedule lr, double mu) {
  OptimizerConfig cfg;
  cfg.rule = OptimizerRule::MomentumSGD;
  cfg.lr = lr;
  cfg.mu = mu;
  return cfg;
}

OptimizerConfig OptimizerConfig::radam(LrSchedule lr, double beta1,
                                       double beta2) {
  OptimizerConfig cfg = adam(lr, beta1, beta2);
  cfg.rule = OptimizerRule::RAdam;
  return cfg;
}

OptimizerConfig OptimizerConfig::lion(LrSchedule lr, double beta1,
                                      double beta2) {
  OptimizerConfig cfg;
  cfg.rule = OptimizerRule::Lion;
  cfg.schedule = DecaySchedule::constant(beta1, beta2);
  cfg.lr = lr;
  return cfg;
}

std::vector<std::string> validation_issues(const OptimizerConfig& cfg) {
  std::vector<std::string> issues;
  if (!(cfg.eps > 0.0)) issues.push_back("eps must be positive");
  if (!(cfg.lambda >= 0.0)) issues.push_back("lambda must be >= 0");
  for (auto& issue : validation_issues(cfg.lr)) issues.push_back("lr: " + issue);

  switch (cfg.rule) {
    case OptimizerRule::GeneralizedAdam:
      for (auto& issue : validation_issues(cfg.schedule)) {
        issues.push_back("schedule: " + issue);
      }
      break;
    case OptimizerRule::AdamClassic:
    case OptimizerRule::AdamW:
    case OptimizerRule::RAdam:
    case OptimizerRule::Lion:
      if (!(cfg.schedule.beta1 > 0.0 && cfg.schedule.beta1 < 1.0)) {
        issues.push_back("beta1 must lie in (0, 1)");
      }
      if (!(cfg.schedule.beta2 > 0.0 && cfg.schedule.beta2 < 1.0)) {
        issues.push_back("beta2 must lie in (0, 1)");
      }
      break;
    case OptimizerRule::MomentumSGD:
      if (!(cfg.mu >= 0.0 && cfg.mu < 1.0)) {
        issues.push_back("mu must lie in [0, 1)");
      }
      break;
    case OptimizerRule::SGD:
      break;
  }
  return issues;
}

OptimizerState OptimizerState::for_params(std::span<const Tensor> params) {
  OptimizerState state;
  state.slots.reserve(params.size());
  for (const auto& p : params) {
    state.slots.push_back({Tensor::zeros_like(p), Tensor::zeros_like(p)});
  }
  return state;
}

StepReport step_generalized_adam(OptimizerState& state,
                                 std::span<Tensor> params,
                                 std::span<const Tensor> grads,
                                 const OptimizerConfig& cfg) {
  require_rule(cfg, OptimizerRule::GeneralizedAdam);
  check_inputs(state, params, grads);
  const std::uint64_t t = state.t + 1;
  const EmaWeights w1 = beta1_weights(cfg.schedule.beta1, t);
  const EmaWeights w2 = beta2_weights(cfg.schedule, t);
  const double lr = lr_at(cfg.lr, t);

  SecondMomentMotion motion;
  for (std::size_t l = 0; l < params.size(); ++l) {
    auto theta = params[l].data();
    auto g = grads[l].data();
    auto m = state.slots[l].m.data();
    auto v = state.slots[l].v.data();
    const double lambda = decay_rate(cfg, params[l]);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = w1.decay * m[i] + w1.complement * g[i];
      const double v_old = v[i];
      v[i] = w2.decay * v[i] + w2.complement * g[i] * g[i];
      motion.observe(v_old, v[i]);
      const double u = m[i] / (std::sqrt(v[i]) + cfg.eps);
      theta[i] -= lr * (u + lambda * theta[i]);
    }
  }
  state.t = t;
  return {t, lr, w2.decay, motion.relative(cfg.eps)};
}

StepReport step_adam_classic(OptimizerState& state, std::span<Tensor> params,
                             std::span<const Tensor> grads,
                             const OptimizerConfig& cfg) {
  require_rule(cfg, OptimizerRule::AdamClassic);
  return adam_classic_impl(state, params, grads, cfg);
}

StepReport step_adamw(OptimizerState& state, std::span<Tensor> params,
                      std::span<const Tensor> grads,
                      const OptimizerConfig& cfg) {
  require_rule(cfg, OptimizerRule::AdamW);
  return adam_classic_impl(state, params, grads, cfg);
}

StepReport step_sgd(OptimizerState& state, std::span<Tensor> params,
                    std::span<const Tensor> grads, const OptimizerConfig& cfg) {
  require_rule(cfg, OptimizerRule::SGD);
  check_inputs(state, params, grads);
  const std::uint64_t t = state.t + 1;
  const double lr = lr_at(cfg.lr, t);
  for (std::size_t l = 0; l < params.size(); ++l) {
    auto theta = params[l].data();
    auto g = grads[l].data();
    const double lambda = decay_rate(cfg, params[l]);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      theta[i] -= lr * (g[i] + lambda * theta[i]);
    }
  }
  state.t = t;
  return {t, lr, std::nullopt, std::nullopt};
}

StepReport step_momentum_sgd(OptimizerState& state, std::span<Tensor> params,
                             std::span<const Tensor> grads,
                             const OptimizerConfig& cfg) {
  require_rule(cfg, OptimizerRule::MomentumSGD);
  check_inputs(state, params, grads);
  const std::uint64_t t = state.t + 1;
  const double lr = lr_at(cfg.lr, t);
  for (std::size_t l = 0; l < params.size(); ++l) {
    auto theta = params[l].data();
    auto g = grads[l].data();
    auto b = state.slots[l].m.data();
    const double lambda = decay_rate(cfg, params[l]);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      b[i] = cfg.mu * b[i] + g[i];
      theta[i] -= lr * (b[i] + lambda * theta[i]);
    }
  }
  state.t = t;
  return {t, lr, std::nullopt, std::nullopt};
}

double radam_rho(double beta2, std::uint64_t t) {
  const double rho_inf = 2.0 / (1.0 - beta2) - 1.0;
  const double td = static_cast<double>(t);
  const double bt = std::pow(beta2, td);
  return rho_inf - 2.0 * td * bt / (1.0 - bt);
}

StepReport step_radam(OptimizerState& state, std::span<Tensor> params,
                      std::span<const Tensor> grads,
                      const OptimizerConfig& cfg) {
  require_rule(cfg, OptimizerRule::RAdam);
  check_inputs(state, params, grads);
  const std::uint64_t t = state.t + 1;
  const double b1 = cfg.schedule.beta1;
  const double b2 = cfg.schedule.beta2;
  const double td = static_cast<double>(t);
  const double correction1 = 1.0 - std::pow(b1, td);
  const double correction2 = 1.0 - std::pow(b2, td);
  const double lr = lr_at(cfg.lr, t);

  const double rho_inf = 2.0 / (1.0 - b2) - 1.0;
  const double rho = radam_rho(b2, t);
  const bool adaptive = rho > 4.0;
  const double rectifier =
      adaptive ? std::sqrt((rho - 4.0) * (rho - 2.0) * rho_inf /
                           ((rho_inf - 4.0) * (rho_inf - 2.0) * rho))
               : 0.0;

  SecondMomentMotion motion;
  for (std::size_t l = 0; l < params.size(); ++l) {
    auto theta = params[l].data();
    auto g = grads[l].data();
    auto m = state.slots[l].m.data();
    auto v = state.slots[l].v.data();
    const double lambda = decay_rate(cfg, params[l]);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m[i] = b1 * m[i] + (1.0 - b1) * g[i];
      const double v_old = v[i];
      v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
      motion.observe(v_old, v[i]);
      const double m_hat = m[i] / correction1;
      double direction = m_hat;
      if (adaptive) {
        direction = rectifier * m_hat / (std::sqrt(v[i] / correction2) + cfg.eps);
      }
      theta[i] -= lr * (direction + lambda * theta[i]);
    }
  }
  state.t = t;
  return {t, lr, (b2 - std::pow(b2, td)) / correction2, motion.relative(cfg.eps)};
}

StepReport step_lion(OptimizerState& state, std::span<Tensor> params,
                     std::span<const Tensor> grads, const OptimizerConfig& cfg) {
  require_rule(cfg, OptimizerRule::Lion);
  check_inputs(state, params, grads);
  const std::uint64_t t = state.t + 1;
  const double b1 = cfg.schedule.beta1;
  const double b2 = cfg.schedule.beta2;
  const double lr = lr_at(cfg.lr, t);
  for (std::size_t l = 0; l < params.size(); ++l) {
    auto theta = params[l].data();
    auto g = grads[l].data();
    auto m = state.slots[l].m.data();
    const double lambda = decay_rate(cfg, params[l]);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double c = b1 * m[i] + (1.0 - b1) * g[i];
      const double s = static_cast<double>((c > 0.0) - (c < 0.0));
      theta[i] -= lr * (s + lambda * theta[i]);
      m[i] = b2 * m[i] + (1.0 - b2) * g[i];
    }
  }
  state.t = t;
  return {t, lr, std::nullopt, std::nullopt};
}

StepReport step(OptimizerState& state, std::span<Tensor> params,
                std::span<const Tensor> grads, const OptimizerConfig& cfg) {
  switch (cfg.rule) {
    case OptimizerRule::GeneralizedAdam:
      return step_generalized_adam(state, params, grads, cfg);
    case OptimizerRule::AdamClassic:
      return step_adam_classic(state, params, grads, cfg);
    case OptimizerRule::AdamW: return step_adamw(state, params, grads, cfg);
    case OptimizerRule::SGD: return step_sgd(state, params, grads, cfg);
    case OptimizerRule::MomentumSGD:
      return step_momentum_sgd(state, params, grads, cfg);
    case OptimizerRule::RAdam: return step_radam(state, params, grads, cfg);
    case OptimizerRule::Lion: return step_lion(state, params, grads, cfg);
  }
  throw DomainError("unknown optimizer rule");
}

bool track_best(OptimizerState& state, double loss,
                std::span<const Tensor> params) {
  if (!(loss < state.best_loss)) return false;
  state.best_loss = loss;
  state.best_params.assign(params.begin(), params.end());
  state.best_step = state.t;
  return true;
}

}  // namespace adamnx
