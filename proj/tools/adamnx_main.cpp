// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

// Command-line front end: training runs, sweeps, verification tables and
// plots.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adamnx/bench/config.hpp"
#include "adamnx/bench/plot.hpp"
#include "adamnx/bench/runner.hpp"
#include "adamnx/bench/smoothing.hpp"
#include "adamnx/bench/sweep.hpp"
#include "adamnx/bench/trajectory_csv.hpp"
#include "adamnx/bench/verify.hpp"
#include "adamnx/errors.hpp"
#include "adamnx/numerics/parallel.hpp"

namespace fs = std::filesystem;
using namespace adamnx;
using namespace adamnx::bench;

namespace {

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<std::string> out_dir) {
  RunConfig cfg = parse_config(config_path);
  if (seed) cfg.seed = *seed;
  const TrajectoryRecord record = run_experiment(cfg);

  fs::path dir = out_dir ? fs::path(*out_dir)
                         : (cfg.output ? fs::path(*cfg.output) : fs::path("."));
  fs::create_directories(dir);
  const fs::path csv = dir / (record.run_id + ".csv");
  write_csv(record, csv);
  write_run_summary(record, dir / (record.run_id + ".json"));

  std::cout << "run " << record.run_id << ": " << record.steps.size()
            << " steps, best loss " << record.best_loss << " at step "
            << record.best_step << '\n';
  if (!record.epochs.empty()) {
    const EpochRow& last = record.epochs.back();
    std::cout << "final epoch " << last.epoch << " mean loss " << last.mean_loss;
    if (last.top1_err) std::cout << ", top-1 error " << *last.top1_err;
    if (last.top5_err) std::cout << ", top-5 error " << *last.top5_err;
    std::cout << '\n';
  }
  std::cout << "wrote " << csv.string() << '\n';
  if (record.diverged) {
    std::cerr << "error: run diverged at step " << record.diverged_step.value_or(0)
              << '\n';
    return 3;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& optimizers,
              const std::string& seeds, const std::string& out_dir) {
  const RunConfig base = parse_config(config_path);
  const auto names = split_names(optimizers);
  if (names.empty()) throw ParseError("--optimizers needs at least one name");
  const auto seed_list = parse_seed_list(seeds);
  const auto records =
      run_sweep(base, names, seed_list, fs::path(out_dir), default_worker_count());
  const auto rows = summarize(records);
  std::cout << summary_table_text(rows);
  std::cout << "wrote " << records.size() << " runs and summary.csv to "
            << out_dir << '\n';
  const bool any_diverged = std::any_of(
      records.begin(), records.end(),
      [](const TrajectoryRecord& r) { return r.diverged; });
  if (any_diverged) {
    std::cerr << "error: at least one run diverged\n";
    return 3;
  }
  return 0;
}

int report(const std::vector<CheckRow>& rows) {
  print_check_table(std::cout, rows);
  return all_passed(rows) ? 0 : 1;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out,
             bool smooth) {
  std::vector<PlotSeries> series;
  for (const std::string& path : inputs) {
    const TrajectoryRecord record = read_csv(path);
    PlotSeries s;
    s.label = record.run_id.empty() ? fs::path(path).stem().string()
                                    : record.run_id;
    std::vector<double> losses;
    losses.reserve(record.steps.size());
    for (const StepRow& row : record.steps) losses.push_back(row.loss);
    if (smooth) {
      const SmoothingParams p = smoothing_params(losses.size());
      s.y = smooth_series(losses, losses.size());
      for (std::size_t i = 0; i < s.y.size(); ++i) {
        s.x.push_back(static_cast<double>(record.steps[i * p.step].step));
      }
    } else {
      s.y = losses;
      for (const StepRow& row : record.steps) {
        s.x.push_back(static_cast<double>(row.step));
      }
    }
    series.push_back(std::move(s));
  }
  PlotOptions options;
  if (!smooth) options.y_label = "training loss";
  emit_plot(series, out, options);
  std::cout << "wrote " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adamnx: optimizer experiments and verification"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::string> run_out;
  auto* run = app.add_subcommand("run", "train one configuration");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_option("--seed", run_seed, "override the config seed");
  run->add_option("--out", run_out, "output directory");

  std::string sweep_opts, sweep_seeds = "1..5", sweep_out;
  auto* sweep = app.add_subcommand("sweep", "optimizers x seeds cross product");
  sweep->add_option("--config", config_path, "JSON run configuration")->required();
  sweep->add_option("--optimizers", sweep_opts, "comma-separated names")->required();
  sweep->add_option("--seeds", sweep_seeds, "e.g. 1..5 or 1,3,7");
  sweep->add_option("--out", sweep_out, "output directory")->required();

  auto* vsched = app.add_subcommand("verify-schedules", "schedule property table");

  std::size_t chains = 100'000;
  std::uint64_t t_probe = 10'000;
  std::uint64_t var_seed = 2024;
  auto* vvar = app.add_subcommand("verify-variance",
                                  "Monte-Carlo moments against closed forms");
  vvar->add_option("--chains", chains, "independent chains")->check(CLI::Range(2, 100'000'000));
  vvar->add_option("--t", t_probe, "probe step")->check(CLI::Range(1, 100'000'000));
  vvar->add_option("--seed", var_seed, "master seed");

  std::uint64_t grad_seed = 7;
  auto* gcheck = app.add_subcommand("gradcheck", "analytic vs finite-difference gradients");
  gcheck->add_option("--seed", grad_seed, "seed for the random points");

  std::vector<std::string> plot_in;
  std::string plot_out;
  bool plot_smooth = false;
  auto* plot = app.add_subcommand("plot", "SVG loss curves from trajectory CSVs");
  plot->add_option("--in", plot_in, "trajectory CSV files")->required();
  plot->add_option("--out", plot_out, "SVG path")->required();
  plot->add_flag("--smooth", plot_smooth, "downsample and EWMA-smooth");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, run_seed, run_out);
    if (*sweep) return cmd_sweep(config_path, sweep_opts, sweep_seeds, sweep_out);
    if (*vsched) return report(verify_schedules());
    if (*vvar) {
      return report(verify_variance(chains, t_probe, default_worker_count(), var_seed));
    }
    if (*gcheck) return report(gradcheck_table(grad_seed));
    if (*plot) return cmd_plot(plot_in, plot_out, plot_smooth);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
