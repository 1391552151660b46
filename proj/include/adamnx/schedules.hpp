// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace adamnx {

/// Second-moment decay-rate families.
///
///   AdamClassic  (b2 - b2^t) / (1 - b2^t)          bias-corrected Adam
///   AdamNX       (1 - b2^{(1-b2)(t-1)}) / (1 - b2^{(1-b2)t})
///   AdaX         1 - b2 / ((1 + b2)^t - 1)
///   Adafactor    1 - 1 / t^c                        (c stored in beta2)
///   Constant     b2
enum class ScheduleFamily { AdamClassic, AdamNX, AdaX, Adafactor, Constant };

std::string_view to_string(ScheduleFamily family);
/// Accepts the lower-case names used in configs ("adam_classic", "adamnx",
/// "adax", "adafactor", "constant"). Throws DomainError otherwise.
ScheduleFamily schedule_family_from_string(std::string_view name);

struct DecaySchedule {
  ScheduleFamily family = ScheduleFamily::AdamNX;
  double beta1 = 0.9;
  /// Decay parameter of the family; the exponent c for Adafactor.
  double beta2 = 0.99;

  static DecaySchedule adamnx(double beta1 = 0.9, double beta2 = 0.99);
  static DecaySchedule adam_classic(double beta1 = 0.9, double beta2 = 0.999);
  static DecaySchedule adax(double beta1 = 0.9, double beta2 = 1e-4);
  static DecaySchedule adafactor(double beta1 = 0.9, double c = 0.8);
  static DecaySchedule constant(double beta1, double beta2);

  /// Default parameter for a family (0.99 AdamNX, 0.999 AdamClassic, ...).
  static double default_beta2(ScheduleFamily family);

  friend bool operator==(const DecaySchedule&, const DecaySchedule&) = default;
};

/// Empty when the schedule satisfies its family's parameter invariants.
std::vector<std::string> validation_issues(const DecaySchedule& schedule);
/// Throws DomainError listing validation_issues() if any.
void validate(const DecaySchedule& schedule);

/// The pair (decay, 1 - decay) of an exponential moving average step.
///
/// Both halves are evaluated in closed form so the complement keeps full
/// relative precision after the decay itself has rounded to 1.0. At t = 1
/// every family except Constant returns exactly {0, 1}.
struct EmaWeights {
  double decay;
  double complement;
};

/// (beta1 - beta1^t) / (1 - beta1^t). Requires t >= 1 and 0 < beta1 < 1.
double beta1_hat(double beta1, std::uint64_t t);
EmaWeights beta1_weights(double beta1, std::uint64_t t);

/// Second-moment decay rate of the schedule at 1-based step t.
double beta2_hat(const DecaySchedule& schedule, std::uint64_t t);
EmaWeights beta2_weights(const DecaySchedule& schedule, std::uint64_t t);

enum class LrMode { Fixed, LinearThenFloor };

/// Learning rate: constant, or a linear ramp from eta_peak at t = 0 down to
/// eta_min at t = t1 followed by a floor at eta_min.
struct LrSchedule {
  LrMode mode = LrMode::Fixed;
  double eta_peak = 1e-3;
  double eta_min = 1e-3;
  std::uint64_t t1 = 1;

  static LrSchedule fixed(double eta);
  static LrSchedule linear_then_floor(double eta_peak, double eta_min,
                                      std::uint64_t t1);

  friend bool operator==(const LrSchedule&, const LrSchedule&) = default;
};

std::vector<std::string> validation_issues(const LrSchedule& schedule);
void validate(const LrSchedule& schedule);

double lr_at(const LrSchedule& schedule, std::uint64_t t);

}  // namespace adamnx
