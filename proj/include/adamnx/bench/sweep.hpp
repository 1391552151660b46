// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adamnx/bench/runner.hpp"

namespace adamnx::bench {

/// "1..5" or "1,2,7" (ranges and lists may be mixed: "1..3,9").
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Mean and sample standard deviation over seeds of one optimizer's final
/// epoch.
struct SummaryRow {
  std::string optimizer;
  std::size_t runs = 0;
  std::size_t diverged = 0;
  double final_loss_mean = 0.0;
  double final_loss_sd = 0.0;
  double best_loss_mean = 0.0;
  std::optional<double> top1_mean;
  std::optional<double> top1_sd;
  std::optional<double> top5_mean;
  std::optional<double> top5_sd;
};

/// Groups records by optimizer in order of first appearance. Diverged runs
/// are counted but excluded from the means.
std::vector<SummaryRow> summarize(std::span<const TrajectoryRecord> records);
std::string summary_csv_text(std::span<const SummaryRow> rows);
std::string summary_table_text(std::span<const SummaryRow> rows);

/// Runs the cross product optimizers x seeds over `workers` threads. Records
/// come back sorted by (optimizer order, seed). When out_dir is set each run
/// writes <run_id>.csv and <run_id>.json there, plus summary.csv.
std::vector<TrajectoryRecord> run_sweep(
    const RunConfig& base, std::span<const std::string> optimizers,
    std::span<const std::uint64_t> seeds,
    const std::optional<std::filesystem::path>& out_dir, std::size_t workers);

}  // namespace adamnx::bench
