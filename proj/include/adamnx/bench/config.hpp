// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adamnx/optimizers.hpp"

namespace adamnx::bench {

/// Objective selection. Which fields matter depends on `name`:
///   quadratic      dim, condition
///   rosenbrock     dim (even)
///   blobs_logreg   samples, classes, features, spread, radius, l2
///   blobs_mlp      samples, classes, features, spread, radius, hidden
struct ProblemSpec {
  std::string name = "quadratic";
  std::size_t dim = 10;
  double condition = 10.0;
  std::size_t samples = 2000;
  int classes = 10;
  std::size_t features = 20;
  double spread = 1.0;
  double radius = 3.0;
  std::vector<std::size_t> hidden{32};
  double l2 = 0.0;
  /// Seed for dataset generation; the run seed when unset.
  std::optional<std::uint64_t> data_seed;

  bool uses_dataset() const {
    return name == "blobs_logreg" || name == "blobs_mlp";
  }
};

struct RunConfig {
  int schema = 1;
  ProblemSpec problem;
  /// Label written to outputs; one of the optimizer names accepted by
  /// optimizer_preset().
  std::string optimizer_name = "adamnx";
  OptimizerConfig optimizer;
  std::uint64_t epochs = 1;
  std::size_t batch_size = 32;
  /// Steps per epoch for problems without a dataset.
  std::uint64_t steps_per_epoch = 100;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> output;
};

/// Optimizer names understood by configs and `sweep --optimizers`:
///   adamnx, adam (alias adam_classic), adamw, sgd, momentum_sgd (alias
///   sgdm), radam, lion, adax, adafactor, and generalized:<family> for the
///   schedule-driven engine with any decay family.
/// Returns the default hyperparameters of that optimizer; the lr schedule is
/// left at its default. Throws DomainError for unknown names.
OptimizerConfig optimizer_preset(std::string_view name);
std::vector<std::string> known_optimizer_names();

/// Parses and validates a JSON run configuration. Throws ParseError with
/// line and column for malformed JSON and ValidationError listing every
/// violated field constraint.
RunConfig parse_config(const std::filesystem::path& path);
RunConfig parse_config_text(std::string_view text,
                            std::string_view source = "<config>");

std::vector<std::string> validation_issues(const RunConfig& cfg);

/// The same config with another optimizer preset; optimizer hyperparameters
/// other than lr and lambda revert to the preset's defaults.
RunConfig with_optimizer(const RunConfig& cfg, std::string_view name);

/// Serializes back to the JSON accepted by parse_config_text.
std::string to_json_text(const RunConfig& cfg);

}  // namespace adamnx::bench
