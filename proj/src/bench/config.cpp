// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/bench/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "adamnx/errors.hpp"

namespace adamnx::bench {
namespace {

using nlohmann::json;

const std::set<std::string> kProblemNames = {"quadratic", "rosenbrock",
                                             "blobs_logreg", "blobs_mlp"};

// Reads typed fields out of a JSON object, recording every problem instead
// of throwing at the first one.
class FieldReader {
 public:
  FieldReader(const json& object, std::string prefix,
              std::vector<std::string>& issues)
      : object_(object), prefix_(std::move(prefix)), issues_(issues) {}

  bool has(const char* key) const { return object_.contains(key); }

  template <typename T>
  void read(const char* key, T& out) {
    if (!object_.contains(key)) return;
    const json& value = object_.at(key);
    if constexpr (std::is_same_v<T, std::string>) {
      if (!value.is_string()) return bad(key, "a string");
      out = value.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!value.is_number()) return bad(key, "a number");
      out = value.get<T>();
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        return bad(key, "a non-negative integer");
      }
      out = value.get<T>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!value.is_number_integer()) return bad(key, "an integer");
      out = value.get<T>();
    }
  }

  void read_sizes(const char* key, std::vector<std::size_t>& out) {
    if (!object_.contains(key)) return;
    const json& value = object_.at(key);
    if (!value.is_array()) return bad(key, "an array of positive integers");
    std::vector<std::size_t> sizes;
    for (const auto& item : value) {
      if (!item.is_number_integer() || item.get<long long>() < 1) {
        return bad(key, "an array of positive integers");
      }
      sizes.push_back(item.get<std::size_t>());
    }
    out = std::move(sizes);
  }

  void reject_unknown(const std::set<std::string>& allowed) {
    for (auto it = object_.begin(); it != object_.end(); ++it) {
      if (!allowed.count(it.key())) {
        issues_.push_back(field(it.key().c_str()) + ": unknown field");
      }
    }
  }

  std::string field(const char* key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

 private:
  void bad(const char* key, const char* what) {
    issues_.push_back(field(key) + ": must be " + what);
  }

  const json& object_;
  std::string prefix_;
  std::vector<std::string>& issues_;
};

void read_problem(const json& node, ProblemSpec& spec,
                  std::vector<std::string>& issues) {
  if (node.is_string()) {
    spec.name = node.get<std::string>();
  } else if (node.is_object()) {
    FieldReader r(node, "problem", issues);
    r.reject_unknown({"name", "dim", "condition", "samples", "classes",
                      "features", "spread", "radius", "hidden", "l2",
                      "data_seed"});
    if (!r.has("name")) issues.push_back("problem.name: required");
    r.read("name", spec.name);
    r.read("dim", spec.dim);
    r.read("condition", spec.condition);
    r.read("samples", spec.samples);
    r.read("classes", spec.classes);
    r.read("features", spec.features);
    r.read("spread", spec.spread);
    r.read("radius", spec.radius);
    r.read_sizes("hidden", spec.hidden);
    r.read("l2", spec.l2);
    if (r.has("data_seed")) {
      std::uint64_t s = 0;
      r.read("data_seed", s);
      spec.data_seed = s;
    }
  } else {
    issues.push_back("problem: must be a name or an object");
  }
}

void read_lr(const json& node, LrSchedule& lr, std::vector<std::string>& issues) {
  if (node.is_number()) {
    lr = LrSchedule::fixed(node.get<double>());
    return;
  }
  if (!node.is_object()) {
    issues.push_back("lr: must be a number or an object");
    return;
  }
  FieldReader r(node, "lr", issues);
  r.reject_unknown({"mode", "eta", "eta_peak", "eta_min", "t1"});
  std::string mode = "fixed";
  r.read("mode", mode);
  if (mode == "fixed") {
    double eta = lr.eta_peak;
    r.read("eta_peak", eta);
    r.read("eta", eta);
    if (!r.has("eta") && !r.has("eta_peak")) {
      issues.push_back("lr.eta: required for fixed mode");
    }
    lr = LrSchedule::fixed(eta);
  } else if (mode == "linear_then_floor") {
    lr.mode = LrMode::LinearThenFloor;
    for (const char* key : {"eta_peak", "eta_min", "t1"}) {
      if (!r.has(key)) issues.push_back(r.field(key) + ": required");
    }
    r.read("eta_peak", lr.eta_peak);
    r.read("eta_min", lr.eta_min);
    r.read("t1", lr.t1);
  } else {
    issues.push_back("lr.mode: unknown mode '" + mode +
                     "' (expected fixed or linear_then_floor)");
  }
}

void read_optimizer(const json& node, RunConfig& cfg,
                    std::vector<std::string>& issues) {
  std::string name;
  const json* object = nullptr;
  if (node.is_string()) {
    name = node.get<std::string>();
  } else if (node.is_object()) {
    object = &node;
    if (node.contains("name") && node["name"].is_string()) {
      name = node["name"].get<std::string>();
    } else {
      issues.push_back("optimizer.name: required string");
      return;
    }
  } else {
    issues.push_back("optimizer: must be a name or an object");
    return;
  }

  const LrSchedule lr = cfg.optimizer.lr;
  try {
    cfg.optimizer = optimizer_preset(name);
  } catch (const DomainError&) {
    issues.push_back("optimizer: unknown optimizer '" + name + "'");
    return;
  }
  cfg.optimizer.lr = lr;
  cfg.optimizer_name = name;
  if (!object) return;

  FieldReader r(*object, "optimizer", issues);
  r.reject_unknown({"name", "beta1", "beta2", "c", "lambda", "eps", "mu"});
  r.read("beta1", cfg.optimizer.schedule.beta1);
  r.read("beta2", cfg.optimizer.schedule.beta2);
  if (r.has("c")) {
    if (cfg.optimizer.schedule.family != ScheduleFamily::Adafactor ||
        cfg.optimizer.rule != OptimizerRule::GeneralizedAdam) {
      issues.push_back("optimizer.c: only valid for the adafactor schedule");
    } else {
      r.read("c", cfg.optimizer.schedule.beta2);
    }
  }
  r.read("lambda", cfg.optimizer.lambda);
  r.read("eps", cfg.optimizer.eps);
  r.read("mu", cfg.optimizer.mu);
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text,
                                                    std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

OptimizerConfig optimizer_preset(std::string_view name) {
  const LrSchedule lr = LrSchedule::fixed(1e-3);
  if (name == "adamnx") return OptimizerConfig::adamnx(lr);
  if (name == "adam" || name == "adam_classic") return OptimizerConfig::adam(lr);
  if (name == "adamw") return OptimizerConfig::adamw(lr, 0.01);
  if (name == "sgd") return OptimizerConfig::sgd(lr);
  if (name == "momentum_sgd" || name == "sgdm") {
    return OptimizerConfig::momentum_sgd(lr);
  }
  if (name == "radam") return OptimizerConfig::radam(lr);
  if (name == "lion") return OptimizerConfig::lion(lr);
  if (name == "adax") return OptimizerConfig::generalized(DecaySchedule::adax(), lr);
  if (name == "adafactor") {
    return OptimizerConfig::generalized(DecaySchedule::adafactor(), lr);
  }
  constexpr std::string_view kGeneralized = "generalized:";
  if (name.starts_with(kGeneralized)) {
    const ScheduleFamily family =
        schedule_family_from_string(name.substr(kGeneralized.size()));
    DecaySchedule schedule{family, 0.9, DecaySchedule::default_beta2(family)};
    return OptimizerConfig::generalized(schedule, lr);
  }
  throw DomainError("unknown optimizer '" + std::string(name) + "'");
}

std::vector<std::string> known_optimizer_names() {
  return {"adamnx", "adam",      "adamw",
          "sgd",    "momentum_sgd", "radam",
          "lion",   "adax",      "adafactor",
          "generalized:adam_classic", "generalized:adamnx",
          "generalized:adax", "generalized:adafactor",
          "generalized:constant"};
}

std::vector<std::string> validation_issues(const RunConfig& cfg) {
  std::vector<std::string> issues;
  if (cfg.schema != 1) issues.push_back("schema: must be 1");
  const ProblemSpec& p = cfg.problem;
  if (!kProblemNames.count(p.name)) {
    issues.push_back("problem.name: unknown problem '" + p.name + "'");
  } else if (p.name == "quadratic") {
    if (p.dim < 1) issues.push_back("problem.dim: must be >= 1");
    if (!(p.condition >= 1.0)) issues.push_back("problem.condition: must be >= 1");
  } else if (p.name == "rosenbrock") {
    if (p.dim < 2 || p.dim % 2) issues.push_back("problem.dim: must be even and >= 2");
  } else {
    if (p.classes < 2) issues.push_back("problem.classes: must be >= 2");
    if (p.samples < static_cast<std::size_t>(std::max(p.classes, 1))) {
      issues.push_back("problem.samples: must be >= classes");
    }
    if (p.features < 1) issues.push_back("problem.features: must be >= 1");
    if (!(p.spread >= 0.0)) issues.push_back("problem.spread: must be >= 0");
    if (!(p.radius > 0.0)) issues.push_back("problem.radius: must be > 0");
    if (!(p.l2 >= 0.0)) issues.push_back("problem.l2: must be >= 0");
    if (p.name == "blobs_mlp" && p.hidden.empty()) {
      issues.push_back("problem.hidden: must be non-empty");
    }
    if (cfg.batch_size > p.samples) {
      issues.push_back("batch_size: must not exceed problem.samples");
    }
  }
  if (cfg.epochs < 1) issues.push_back("epochs: must be >= 1");
  if (cfg.batch_size < 1) issues.push_back("batch_size: must be >= 1");
  if (cfg.steps_per_epoch < 1) issues.push_back("steps_per_epoch: must be >= 1");
  for (auto& issue : adamnx::validation_issues(cfg.optimizer)) {
    issues.push_back("optimizer: " + issue);
  }
  return issues;
}

RunConfig parse_config_text(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON ("
        << e.what() << ")";
    throw ParseError(msg.str());
  }
  if (!root.is_object()) {
    throw ParseError(std::string(source) + ": top level must be a JSON object");
  }

  std::vector<std::string> issues;
  RunConfig cfg;
  FieldReader r(root, "", issues);
  r.reject_unknown({"schema", "problem", "optimizer", "lr", "epochs",
                    "batch_size", "steps_per_epoch", "seed", "output"});
  for (const char* key : {"schema", "problem", "optimizer", "lr", "epochs",
                          "batch_size", "seed"}) {
    if (!root.contains(key)) issues.push_back(std::string(key) + ": required");
  }
  r.read("schema", cfg.schema);
  if (root.contains("problem")) read_problem(root["problem"], cfg.problem, issues);
  if (root.contains("lr")) read_lr(root["lr"], cfg.optimizer.lr, issues);
  if (root.contains("optimizer")) read_optimizer(root["optimizer"], cfg, issues);
  r.read("epochs", cfg.epochs);
  r.read("batch_size", cfg.batch_size);
  r.read("steps_per_epoch", cfg.steps_per_epoch);
  r.read("seed", cfg.seed);
  if (root.contains("output")) {
    std::string out;
    r.read("output", out);
    cfg.output = out;
  }

  for (auto& issue : validation_issues(cfg)) issues.push_back(std::move(issue));
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

RunConfig with_optimizer(const RunConfig& cfg, std::string_view name) {
  RunConfig out = cfg;
  out.optimizer = optimizer_preset(name);
  out.optimizer.lr = cfg.optimizer.lr;
  out.optimizer.lambda = cfg.optimizer.lambda;
  out.optimizer_name = std::string(name);
  return out;
}

std::string to_json_text(const RunConfig& cfg) {
  json root;
  root["schema"] = cfg.schema;
  json problem;
  const ProblemSpec& p = cfg.problem;
  problem["name"] = p.name;
  if (p.uses_dataset()) {
    problem["samples"] = p.samples;
    problem["classes"] = p.classes;
    problem["features"] = p.features;
    problem["spread"] = p.spread;
    problem["radius"] = p.radius;
    if (p.name == "blobs_mlp") problem["hidden"] = p.hidden;
    if (p.name == "blobs_logreg") problem["l2"] = p.l2;
    if (p.data_seed) problem["data_seed"] = *p.data_seed;
  } else {
    problem["dim"] = p.dim;
    if (p.name == "quadratic") problem["condition"] = p.condition;
  }
  root["problem"] = problem;

  json opt;
  opt["name"] = cfg.optimizer_name;
  opt["beta1"] = cfg.optimizer.schedule.beta1;
  if (cfg.optimizer.rule == OptimizerRule::GeneralizedAdam &&
      cfg.optimizer.schedule.family == ScheduleFamily::Adafactor) {
    opt["c"] = cfg.optimizer.schedule.beta2;
  } else {
    opt["beta2"] = cfg.optimizer.schedule.beta2;
  }
  opt["lambda"] = cfg.optimizer.lambda;
  opt["eps"] = cfg.optimizer.eps;
  opt["mu"] = cfg.optimizer.mu;
  root["optimizer"] = opt;

  json lr;
  if (cfg.optimizer.lr.mode == LrMode::Fixed) {
    lr["mode"] = "fixed";
    lr["eta"] = cfg.optimizer.lr.eta_peak;
  } else {
    lr["mode"] = "linear_then_floor";
    lr["eta_peak"] = cfg.optimizer.lr.eta_peak;
    lr["eta_min"] = cfg.optimizer.lr.eta_min;
    lr["t1"] = cfg.optimizer.lr.t1;
  }
  root["lr"] = lr;
  root["epochs"] = cfg.epochs;
  root["batch_size"] = cfg.batch_size;
  root["steps_per_epoch"] = cfg.steps_per_epoch;
  root["seed"] = cfg.seed;
  if (cfg.output) root["output"] = cfg.output->string();
  return root.dump(2);
}

}  // namespace adamnx::bench
