// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/bench/runner.hpp"

#include <chrono>
#include <cmath>

#include "adamnx/errors.hpp"
#include "adamnx/optimizers.hpp"
#include "adamnx/problems/metrics.hpp"

namespace adamnx::bench {

std::string default_run_id(std::string_view optimizer, std::uint64_t seed) {
  std::string id(optimizer);
  for (char& c : id) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
    if (!keep) c = '-';
  }
  return id + "_seed" + std::to_string(seed);
}

ProblemPtr build_problem(const ProblemSpec& spec, std::uint64_t seed) {
  if (spec.name == "quadratic") return quadratic_problem(spec.dim, spec.condition);
  if (spec.name == "rosenbrock") return rosenbrock_problem(spec.dim);
  if (spec.uses_dataset()) {
    Rng data_rng = Rng(spec.data_seed.value_or(seed)).derive(1);
    auto dataset = std::make_shared<const Dataset>(make_blobs(
        spec.samples, spec.classes, spec.features, spec.spread, data_rng,
        spec.radius));
    if (spec.name == "blobs_logreg") return logreg_problem(dataset, spec.l2);
    return mlp_problem(dataset, spec.hidden);
  }
  throw DomainError("unknown problem '" + spec.name + "'");
}

TrajectoryRecord run_experiment(const RunConfig& cfg) {
  const auto issues = validation_issues(cfg);
  if (!issues.empty()) throw ValidationError(issues);
  const ProblemPtr problem = build_problem(cfg.problem, cfg.seed);
  return run_experiment(cfg, *problem);
}

TrajectoryRecord run_experiment(const RunConfig& cfg, const Problem& problem) {
  const auto started = std::chrono::steady_clock::now();
  TrajectoryRecord record;
  record.optimizer = cfg.optimizer_name;
  record.seed = cfg.seed;
  record.run_id = default_run_id(cfg.optimizer_name, cfg.seed);

  const Rng root(cfg.seed);
  Rng init_rng = root.derive(2);
  Rng batch_rng = root.derive(3);

  std::vector<Tensor> params = problem.initial_params(init_rng);
  OptimizerState state = OptimizerState::for_params(params);
  const Dataset* dataset = problem.dataset();

  for (std::uint64_t epoch = 1; epoch <= cfg.epochs && !record.diverged; ++epoch) {
    std::vector<Batch> batches;
    if (dataset) {
      batches = minibatch_sample(*dataset, cfg.batch_size, batch_rng);
    } else {
      batches.assign(cfg.steps_per_epoch, Batch{});
    }

    double loss_sum = 0.0;
    std::size_t loss_count = 0;
    for (const Batch& batch : batches) {
      LossAndGrad lg = problem.loss_and_grad(params, batch);
      if (!std::isfinite(lg.loss)) {
        record.diverged = true;
        record.diverged_step = state.t + 1;
        break;
      }
      StepReport report;
      try {
        report = step(state, params, lg.grads, cfg.optimizer);
      } catch (const NonFiniteGradient& e) {
        record.diverged = true;
        record.diverged_step = e.step();
        break;
      }
      track_best(state, lg.loss, params);
      record.steps.push_back({report.t, epoch, report.lr, report.beta2_hat,
                              lg.loss, report.v_rel_change});
      loss_sum += lg.loss;
      ++loss_count;
    }
    if (record.diverged || loss_count == 0) break;

    EpochRow row;
    row.epoch = epoch;
    row.step = state.t;
    row.mean_loss = loss_sum / static_cast<double>(loss_count);
    if (dataset) {
      if (auto probs = problem.predict_probs(params, dataset->features)) {
        row.top1_err = topk_error(*probs, dataset->labels, 1);
        if (dataset->classes >= 6) row.top5_err = topk_error(*probs, dataset->labels, 5);
      }
    }
    record.epochs.push_back(row);
  }

  record.best_loss = state.best_loss;
  record.best_step = state.best_step;
  record.best_params = std::move(state.best_params);
  record.final_params = std::move(params);
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return record;
}

}  // namespace adamnx::bench
