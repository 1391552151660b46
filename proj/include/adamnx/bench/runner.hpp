// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "adamnx/bench/config.hpp"
#include "adamnx/problems/problem.hpp"

namespace adamnx::bench {

struct StepRow {
  std::uint64_t step = 0;
  std::uint64_t epoch = 0;
  double lr = 0.0;
  std::optional<double> beta2_hat;
  /// Mini-batch loss at the parameters before this step's update.
  double loss = 0.0;
  std::optional<double> v_rel_change;

  friend bool operator==(const StepRow&, const StepRow&) = default;
};

struct EpochRow {
  std::uint64_t epoch = 0;
  /// Last step of the epoch.
  std::uint64_t step = 0;
  double mean_loss = 0.0;
  std::optional<double> top1_err;
  std::optional<double> top5_err;

  friend bool operator==(const EpochRow&, const EpochRow&) = default;
};

struct TrajectoryRecord {
  std::string run_id;
  std::string optimizer;
  std::uint64_t seed = 0;
  std::vector<StepRow> steps;
  std::vector<EpochRow> epochs;
  double best_loss = std::numeric_limits<double>::infinity();
  std::uint64_t best_step = 0;
  bool diverged = false;
  std::optional<std::uint64_t> diverged_step;
  double wall_seconds = 0.0;
  /// Parameters snapshotted at the best mini-batch loss.
  std::vector<Tensor> best_params;
  std::vector<Tensor> final_params;
};

/// "<optimizer>_seed<seed>" with characters outside [A-Za-z0-9_.-]
/// replaced by '-'.
std::string default_run_id(std::string_view optimizer, std::uint64_t seed);

/// Builds the objective (and dataset) named by the spec. Dataset noise comes
/// from Rng(data_seed or seed).derive(1).
ProblemPtr build_problem(const ProblemSpec& spec, std::uint64_t seed);

/// Trains for cfg.epochs epochs. Each step evaluates the mini-batch loss and
/// gradient, applies the optimizer, then offers the pre-update loss and
/// post-update parameters to track_best. A non-finite loss or gradient ends
/// the run with diverged = true; the record is still returned. Parameter
/// initialization uses Rng(seed).derive(2) and batching Rng(seed).derive(3).
TrajectoryRecord run_experiment(const RunConfig& cfg);
TrajectoryRecord run_experiment(const RunConfig& cfg, const Problem& problem);

}  // namespace adamnx::bench
