// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace adamnx::bench {

struct CheckRow {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

bool all_passed(std::span<const CheckRow> rows);
void print_check_table(std::ostream& os, std::span<const CheckRow> rows);

/// Decay-schedule and learning-rate properties.
std::vector<CheckRow> verify_schedules();

/// Monte-Carlo moments of the bias-corrected second moment against closed
/// forms (zero gradient, sigma = 1, beta2 = 0.999), plus the AdamNX versus
/// Adam variance ordering on shared noise streams.
std::vector<CheckRow> verify_variance(std::size_t chains, std::uint64_t t,
                                      std::size_t workers,
                                      std::uint64_t seed = 2024);

/// Analytic against central-difference gradients at 10 random points for
/// every problem family.
std::vector<CheckRow> gradcheck_table(std::uint64_t seed = 7);

}  // namespace adamnx::bench
