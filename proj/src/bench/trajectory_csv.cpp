// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/bench/trajectory_csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adamnx/errors.hpp"
#include "adamnx/numerics/format.hpp"

namespace adamnx::bench {
namespace {

std::string opt(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::optional<double> parse_opt(std::string_view field) {
  if (field.empty()) return std::nullopt;
  return parse_double(field);
}

std::uint64_t parse_u64(std::string_view field) {
  const double value = parse_double(field);
  if (value < 0 || value != std::floor(value)) {
    throw ParseError("expected a non-negative integer, got '" +
                     std::string(field) + "'");
  }
  return static_cast<std::uint64_t>(value);
}

}  // namespace

std::string to_csv_text(const TrajectoryRecord& record) {
  std::ostringstream os;
  os << kTrajectoryHeader << '\n';
  const std::string prefix = record.run_id + ',' + record.optimizer + ',' +
                             std::to_string(record.seed) + ',';
  std::size_t next_step = 0;
  for (const EpochRow& epoch : record.epochs) {
    while (next_step < record.steps.size() &&
           record.steps[next_step].epoch <= epoch.epoch) {
      const StepRow& s = record.steps[next_step++];
      os << prefix << s.step << ',' << s.epoch << ',' << format_double(s.lr)
         << ',' << opt(s.beta2_hat) << ',' << format_double(s.loss) << ','
         << opt(s.v_rel_change) << ",,\n";
    }
    os << prefix << epoch.step << ',' << epoch.epoch << ",,,"
       << format_double(epoch.mean_loss) << ",," << opt(epoch.top1_err) << ','
       << opt(epoch.top5_err) << '\n';
  }
  // Steps of an epoch cut short by divergence have no epoch row.
  for (; next_step < record.steps.size(); ++next_step) {
    const StepRow& s = record.steps[next_step];
    os << prefix << s.step << ',' << s.epoch << ',' << format_double(s.lr) << ','
       << opt(s.beta2_hat) << ',' << format_double(s.loss) << ','
       << opt(s.v_rel_change) << ",,\n";
  }
  return os.str();
}

void write_csv(const TrajectoryRecord& record,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_csv_text(record);
  if (!out) throw IoError("write failed for " + path.string());
}

TrajectoryRecord parse_csv_text(const std::string& text,
                                const std::string& source) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) {
    throw ParseError(source + ": unexpected header '" + line + "'");
  }

  TrajectoryRecord record;
  bool first = true;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (f.size() != 11) {
      throw ParseError(where + ": expected 11 fields, got " +
                       std::to_string(f.size()));
    }
    try {
      if (first) {
        record.run_id = std::string(f[0]);
        record.optimizer = std::string(f[1]);
        record.seed = parse_u64(f[2]);
        first = false;
      }
      const std::uint64_t step = parse_u64(f[3]);
      const std::uint64_t epoch = parse_u64(f[4]);
      if (f[5].empty()) {
        record.epochs.push_back({epoch, step, parse_double(f[7]),
                                 parse_opt(f[9]), parse_opt(f[10])});
      } else {
        StepRow row{step, epoch, parse_double(f[5]), parse_opt(f[6]),
                    parse_double(f[7]), parse_opt(f[8])};
        if (row.loss < record.best_loss) {
          record.best_loss = row.loss;
          record.best_step = row.step;
        }
        record.steps.push_back(row);
      }
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return record;
}

TrajectoryRecord read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_text(buffer.str(), path.string());
}

void write_run_summary(const TrajectoryRecord& record,
                       const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["run_id"] = record.run_id;
  j["optimizer"] = record.optimizer;
  j["seed"] = record.seed;
  j["steps"] = record.steps.size();
  j["best_loss"] = std::isfinite(record.best_loss)
                       ? nlohmann::ordered_json(record.best_loss)
                       : nlohmann::ordered_json(nullptr);
  j["best_step"] = record.best_step;
  j["diverged"] = record.diverged;
  j["diverged_step"] = record.diverged_step
                           ? nlohmann::ordered_json(*record.diverged_step)
                           : nlohmann::ordered_json(nullptr);
  if (!record.epochs.empty()) {
    const EpochRow& last = record.epochs.back();
    j["final_epoch"] = last.epoch;
    j["final_epoch_loss"] = last.mean_loss;
    j["final_top1_err"] = last.top1_err ? nlohmann::ordered_json(*last.top1_err)
                                        : nlohmann::ordered_json(nullptr);
    j["final_top5_err"] = last.top5_err ? nlohmann::ordered_json(*last.top5_err)
                                        : nlohmann::ordered_json(nullptr);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace adamnx::bench
