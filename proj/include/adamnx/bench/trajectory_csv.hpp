// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <filesystem>
#include <string>

#include "adamnx/bench/runner.hpp"

namespace adamnx::bench {

inline constexpr const char* kTrajectoryHeader =
    "run_id,optimizer,seed,step,epoch,lr,beta2_hat,loss,v_rel_change,top1_err,"
    "top5_err";

/// Step rows carry lr and an empty top1_err; epoch rows leave lr,
/// beta2_hat and v_rel_change empty and store the epoch-mean loss. Each
/// epoch row follows that epoch's step rows. Numbers use 17 significant
/// digits so reading restores them bit for bit.
std::string to_csv_text(const TrajectoryRecord& record);
void write_csv(const TrajectoryRecord& record,
               const std::filesystem::path& path);

/// Restores run_id, optimizer, seed, step and epoch rows; best_loss and
/// best_step are recomputed from the step losses.
TrajectoryRecord read_csv(const std::filesystem::path& path);
TrajectoryRecord parse_csv_text(const std::string& text,
                                const std::string& source = "<csv>");

/// Deterministic JSON summary (no timings): best loss, divergence and final
/// epoch metrics.
void write_run_summary(const TrajectoryRecord& record,
                       const std::filesystem::path& path);

}  // namespace adamnx::bench
