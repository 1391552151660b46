// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/bench/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "adamnx/bench/trajectory_csv.hpp"
#include "adamnx/errors.hpp"
#include "adamnx/numerics/format.hpp"
#include "adamnx/numerics/parallel.hpp"

namespace adamnx::bench {
namespace {

std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  if (text.empty()) throw ParseError("empty seed in seed list");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw ParseError("invalid seed '" + std::string(text) + "'");
    }
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

std::string opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view()
                                           : text.substr(comma + 1);
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      seeds.push_back(parse_seed(item));
      continue;
    }
    const std::uint64_t lo = parse_seed(item.substr(0, dots));
    const std::uint64_t hi = parse_seed(item.substr(dots + 2));
    if (hi < lo) {
      throw ParseError("seed range '" + std::string(item) + "' is descending");
    }
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw ParseError("seed list is empty");
  return seeds;
}

std::vector<SummaryRow> summarize(std::span<const TrajectoryRecord> records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const TrajectoryRecord*>> groups;
  for (const TrajectoryRecord& r : records) {
    auto [it, inserted] = groups.try_emplace(r.optimizer);
    if (inserted) order.push_back(r.optimizer);
    it->second.push_back(&r);
  }

  std::vector<SummaryRow> rows;
  for (const std::string& name : order) {
    SummaryRow row;
    row.optimizer = name;
    std::vector<double> final_loss, best_loss, top1, top5;
    for (const TrajectoryRecord* r : groups[name]) {
      ++row.runs;
      if (r->diverged || r->epochs.empty()) {
        ++row.diverged;
        continue;
      }
      const EpochRow& last = r->epochs.back();
      final_loss.push_back(last.mean_loss);
      best_loss.push_back(r->best_loss);
      if (last.top1_err) top1.push_back(*last.top1_err);
      if (last.top5_err) top5.push_back(*last.top5_err);
    }
    const Moments fl = moments(final_loss);
    row.final_loss_mean = final_loss.empty() ? std::nan("") : fl.mean;
    row.final_loss_sd = final_loss.empty() ? std::nan("") : fl.sd;
    row.best_loss_mean = best_loss.empty() ? std::nan("") : moments(best_loss).mean;
    if (!top1.empty()) {
      const Moments m = moments(top1);
      row.top1_mean = m.mean;
      row.top1_sd = m.sd;
    }
    if (!top5.empty()) {
      const Moments m = moments(top5);
      row.top5_mean = m.mean;
      row.top5_sd = m.sd;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string summary_csv_text(std::span<const SummaryRow> rows) {
  std::ostringstream os;
  os << "optimizer,runs,diverged,final_loss_mean,final_loss_sd,best_loss_mean,"
        "top1_mean,top1_sd,top5_mean,top5_sd\n";
  for (const SummaryRow& r : rows) {
    os << r.optimizer << ',' << r.runs << ',' << r.diverged << ','
       << format_double(r.final_loss_mean) << ','
       << format_double(r.final_loss_sd) << ','
       << format_double(r.best_loss_mean) << ',' << opt(r.top1_mean) << ','
       << opt(r.top1_sd) << ',' << opt(r.top5_mean) << ',' << opt(r.top5_sd)
       << '\n';
  }
  return os.str();
}

std::string summary_table_text(std::span<const SummaryRow> rows) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s %5s %5s %22s %18s %18s\n",
                "optimizer", "runs", "div", "final loss (mean+-sd)",
                "top-1 err", "top-5 err");
  os << line;
  auto pct = [](const std::optional<double>& m, const std::optional<double>& s) {
    if (!m) return std::string("-");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f%% +- %.2f", 100 * *m, 100 * s.value_or(0));
    return std::string(buf);
  };
  for (const SummaryRow& r : rows) {
    char loss[64];
    std::snprintf(loss, sizeof loss, "%.4g +- %.2g", r.final_loss_mean,
                  r.final_loss_sd);
    std::snprintf(line, sizeof line, "%-24s %5zu %5zu %22s %18s %18s\n",
                  r.optimizer.c_str(), r.runs, r.diverged, loss,
                  pct(r.top1_mean, r.top1_sd).c_str(),
                  pct(r.top5_mean, r.top5_sd).c_str());
    os << line;
  }
  return os.str();
}

std::vector<TrajectoryRecord> run_sweep(
    const RunConfig& base, std::span<const std::string> optimizers,
    std::span<const std::uint64_t> seeds,
    const std::optional<std::filesystem::path>& out_dir, std::size_t workers) {
  std::vector<RunConfig> configs;
  for (const std::string& name : optimizers) {
    const RunConfig with_opt = with_optimizer(base, name);
    for (std::uint64_t seed : seeds) {
      RunConfig cfg = with_opt;
      cfg.seed = seed;
      const auto issues = validation_issues(cfg);
      if (!issues.empty()) throw ValidationError(issues);
      configs.push_back(std::move(cfg));
    }
  }
  if (out_dir) std::filesystem::create_directories(*out_dir);

  std::vector<TrajectoryRecord> records(configs.size());
  parallel_for(configs.size(), workers, [&](std::size_t i) {
    records[i] = run_experiment(configs[i]);
    if (out_dir) {
      write_csv(records[i], *out_dir / (records[i].run_id + ".csv"));
      write_run_summary(records[i], *out_dir / (records[i].run_id + ".json"));
    }
  });

  if (out_dir) {
    const auto rows = summarize(records);
    std::ofstream out(*out_dir / "summary.csv", std::ios::binary);
    if (!out) throw IoError("cannot write summary.csv in " + out_dir->string());
    out << summary_csv_text(rows);
  }
  return records;
}

}  // namespace adamnx::bench
