// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/schedules.hpp"

#include <cmath>

#include "adamnx/errors.hpp"

namespace adamnx {
namespace {

// Every 1 - b^x below is written as -expm1(x * log(b)); powering first
// loses all significant digits once x * log(b) is around 1e-4.

void require_step(std::uint64_t t, const char* who) {
  if (t < 1) throw DomainError(std::string(who) + ": step t must be >= 1");
}

void throw_if_invalid(const std::vector<std::string>& issues) {
  if (issues.empty()) return;
  std::string msg = issues.front();
  for (std::size_t i = 1; i < issues.size(); ++i) msg += "; " + issues[i];
  throw DomainError(msg);
}

// (b - b^t) / (1 - b^t) together with its complement (1 - b) / (1 - b^t).
EmaWeights bias_corrected_weights(double b, std::uint64_t t) {
  if (t == 1) return {0.0, 1.0};
  const double log_b = std::log(b);
  const double td = static_cast<double>(t);
  const double denom = std::expm1(td * log_b);  // b^t - 1 < 0
  const double decay = b * std::expm1((td - 1.0) * log_b) / denom;
  const double complement = std::expm1(log_b) / denom;
  return {decay, complement};
}

EmaWeights adamnx_weights(double b, std::uint64_t t) {
  if (t == 1) return {0.0, 1.0};
  // a = b^(1-b); decay = (1 - a^(t-1)) / (1 - a^t) and
  // complement = a^(t-1) (1 - a) / (1 - a^t).
  const double log_a = (1.0 - b) * std::log(b);
  const double td = static_cast<double>(t);
  const double denom = std::expm1(td * log_a);
  const double decay = std::expm1((td - 1.0) * log_a) / denom;
  const double complement =
      std::exp((td - 1.0) * log_a) * std::expm1(log_a) / denom;
  return {decay, complement};
}

EmaWeights adax_weights(double b, std::uint64_t t) {
  // (1 + b)^1 - 1 is b by algebra; the log-space path would round it.
  if (t == 1) return {0.0, 1.0};
  const double x = static_cast<double>(t) * std::log1p(b);
  // log((1 + b)^t - 1) without overflowing for large t.
  const double log_growth =
      x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
  const double complement = std::exp(std::log(b) - log_growth);
  return {1.0 - complement, complement};
}

EmaWeights adafactor_weights(double c, std::uint64_t t) {
  const double log_t = std::log(static_cast<double>(t));
  return {-std::expm1(-c * log_t) + 0.0, std::exp(-c * log_t)};
}

// Once the complement is small, 1 - complement is exact to rounding and
// inherits the complement's monotonicity.
EmaWeights settle(EmaWeights w) {
  if (w.complement <= 0.5) w.decay = 1.0 - w.complement;
  return w;
}

}  // namespace

std::string_view to_string(ScheduleFamily family) {
  switch (family) {
    case ScheduleFamily::AdamClassic: return "adam_classic";
    case ScheduleFamily::AdamNX: return "adamnx";
    case ScheduleFamily::AdaX: return "adax";
    case ScheduleFamily::Adafactor: return "adafactor";
    case ScheduleFamily::Constant: return "constant";
  }
  return "unknown";
}

ScheduleFamily schedule_family_from_string(std::string_view name) {
  if (name == "adam_classic" || name == "adam") return ScheduleFamily::AdamClassic;
  if (name == "adamnx") return ScheduleFamily::AdamNX;
  if (name == "adax") return ScheduleFamily::AdaX;
  if (name == "adafactor") return ScheduleFamily::Adafactor;
  if (name == "constant") return ScheduleFamily::Constant;
  throw DomainError("unknown schedule family '" + std::string(name) + "'");
}

DecaySchedule DecaySchedule::adamnx(double beta1, double beta2) {
  return {ScheduleFamily::AdamNX, beta1, beta2};
}

DecaySchedule DecaySchedule::adam_classic(double beta1, double beta2) {
  return {ScheduleFamily::AdamClassic, beta1, beta2};
}

DecaySchedule DecaySchedule::adax(double beta1, double beta2) {
  return {ScheduleFamily::AdaX, beta1, beta2};
}

DecaySchedule DecaySchedule::adafactor(double beta1, double c) {
  return {ScheduleFamily::Adafactor, beta1, c};
}

DecaySchedule DecaySchedule::constant(double beta1, double beta2) {
  return {ScheduleFamily::Constant, beta1, beta2};
}

double DecaySchedule::default_beta2(ScheduleFamily family) {
  switch (family) {
    case ScheduleFamily::AdamClassic: return 0.999;
    case ScheduleFamily::AdamNX: return 0.99;
    case ScheduleFamily::AdaX: return 1e-4;
    case ScheduleFamily::Adafactor: return 0.8;
    case ScheduleFamily::Constant: return 0.999;
  }
  return 0.99;
}

std::vector<std::string> validation_issues(const DecaySchedule& s) {
  std::vector<std::string> issues;
  if (!(s.beta1 > 0.0 && s.beta1 < 1.0)) {
    issues.push_back("beta1 must lie in (0, 1)");
  }
  const double b = s.beta2;
  switch (s.family) {
    case ScheduleFamily::AdamClassic:
    case ScheduleFamily::AdamNX:
      if (!(b > 0.0 && b < 1.0)) {
        issues.push_back(std::string(to_string(s.family)) +
                         ": beta2 must lie in (0, 1)");
      }
      break;
    case ScheduleFamily::AdaX:
      if (!(b > 0.0 && std::isfinite(b))) {
        issues.push_back("adax: beta2 must be positive");
      }
      break;
    case ScheduleFamily::Adafactor:
      if (!(b > 0.0 && b <= 1.0)) {
        issues.push_back("adafactor: exponent c must lie in (0, 1]");
      }
      break;
    case ScheduleFamily::Constant:
      if (!(b >= 0.0 && b < 1.0)) {
        issues.push_back("constant: beta2 must lie in [0, 1)");
      }
      break;
  }
  return issues;
}

void validate(const DecaySchedule& schedule) {
  throw_if_invalid(validation_issues(schedule));
}

EmaWeights beta1_weights(double beta1, std::uint64_t t) {
  require_step(t, "beta1_hat");
  if (!(beta1 > 0.0 && beta1 < 1.0)) {
    throw DomainError("beta1_hat: beta1 must lie in (0, 1)");
  }
  return settle(bias_corrected_weights(beta1, t));
}

double beta1_hat(double beta1, std::uint64_t t) {
  return beta1_weights(beta1, t).decay;
}

EmaWeights beta2_weights(const DecaySchedule& s, std::uint64_t t) {
  require_step(t, "beta2_hat");
  validate(s);
  switch (s.family) {
    case ScheduleFamily::AdamClassic: return settle(bias_corrected_weights(s.beta2, t));
    case ScheduleFamily::AdamNX: return settle(adamnx_weights(s.beta2, t));
    case ScheduleFamily::AdaX: return settle(adax_weights(s.beta2, t));
    case ScheduleFamily::Adafactor: return settle(adafactor_weights(s.beta2, t));
    case ScheduleFamily::Constant: return {s.beta2, 1.0 - s.beta2};
  }
  throw DomainError("beta2_hat: unknown schedule family");
}

double beta2_hat(const DecaySchedule& schedule, std::uint64_t t) {
  return beta2_weights(schedule, t).decay;
}

LrSchedule LrSchedule::fixed(double eta) {
  return {LrMode::Fixed, eta, eta, 1};
}

LrSchedule LrSchedule::linear_then_floor(double eta_peak, double eta_min,
                                         std::uint64_t t1) {
  return {LrMode::LinearThenFloor, eta_peak, eta_min, t1};
}

std::vector<std::string> validation_issues(const LrSchedule& s) {
  std::vector<std::string> issues;
  if (!(s.eta_peak > 0.0 && std::isfinite(s.eta_peak))) {
    issues.push_back("eta_peak must be positive and finite");
  }
  if (s.mode == LrMode::LinearThenFloor) {
    if (!(s.eta_min > 0.0)) issues.push_back("eta_min must be positive");
    if (!(s.eta_min <= s.eta_peak)) {
      issues.push_back("eta_min must not exceed eta_peak");
    }
    if (s.t1 < 1) issues.push_back("t1 must be >= 1");
  }
  return issues;
}

void validate(const LrSchedule& schedule) {
  throw_if_invalid(validation_issues(schedule));
}

double lr_at(const LrSchedule& s, std::uint64_t t) {
  if (s.mode == LrMode::Fixed) return s.eta_peak;
  if (t >= s.t1) return s.eta_min;
  const double frac = static_cast<double>(t) / static_cast<double>(s.t1);
  return s.eta_peak + (s.eta_min - s.eta_peak) * frac;
}

}  // namespace adamnx
