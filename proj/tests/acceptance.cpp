// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "adamnx/bench/config.hpp"
#include "adamnx/bench/runner.hpp"
#include "adamnx/bench/smoothing.hpp"
#include "adamnx/bench/verify.hpp"
#include "adamnx/errors.hpp"
#include "adamnx/noiselab.hpp"
#include "adamnx/numerics/parallel.hpp"
#include "adamnx/numerics/rng.hpp"
#include "adamnx/optimizers.hpp"
#include "adamnx/problems/problem.hpp"
#include "adamnx/schedules.hpp"

namespace {

using namespace adamnx;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

// 1..1000 densely, then 200 points per decade up to 1e6.
std::vector<std::uint64_t> log_dense_steps() {
  std::vector<std::uint64_t> ts;
  for (std::uint64_t t = 1; t <= 1000; ++t) ts.push_back(t);
  for (int k = 0; k <= 600; ++k) {
    const auto t = static_cast<std::uint64_t>(std::llround(std::pow(10.0, 3.0 + k / 200.0)));
    if (t > ts.back()) ts.push_back(t);
  }
  return ts;
}

Outcome schedule_exactness() {
  bool pass = true;
  std::string detail;
  for (const auto& s : {DecaySchedule::adam_classic(), DecaySchedule::adamnx(),
                        DecaySchedule::adax(), DecaySchedule::adafactor()}) {
    if (beta2_hat(s, 1) != 0.0) {
      pass = false;
      detail += "beta2_hat(1) != 0 ";
    }
  }
  // Near 1 the decay itself rounds to 1.0, so strictness is checked on the
  // complement and the decay must never move backwards.
  const auto nx = DecaySchedule::adamnx(0.9, 0.99);
  double prev_complement = 2.0;
  double prev_decay = -1.0;
  double worst_tail = 0.0;
  std::size_t n = 0;
  for (auto t : log_dense_steps()) {
    const auto w = beta2_weights(nx, t);
    if (!(w.complement < prev_complement) || w.decay < prev_decay) {
      pass = false;
      detail += "not increasing at t=" + std::to_string(t) + " ";
      break;
    }
    prev_complement = w.complement;
    prev_decay = w.decay;
    if (t >= 100000) worst_tail = std::max(worst_tail, std::abs(beta2_hat(nx, t) - 1.0));
    ++n;
  }
  if (!(worst_tail < 1e-6)) pass = false;
  detail += std::to_string(n) + " steps sampled, max |beta2_hat-1| for t>=1e5 = " +
            fmt("%.3g", worst_tail);
  return {pass, detail};
}

Outcome dominance() {
  const auto nx = DecaySchedule::adamnx(0.9, 0.99);
  double worst_gap = std::numeric_limits<double>::infinity();
  std::uint64_t worst_t = 0;
  bool pass = true;
  for (auto t : log_dense_steps()) {
    const auto w2 = beta2_weights(nx, t);
    const auto w1 = beta1_weights(0.9, t);
    if (w2.decay < w1.decay || w2.complement > w1.complement) pass = false;
    const double gap = w1.complement - w2.complement;
    if (gap < worst_gap) {
      worst_gap = gap;
      worst_t = t;
    }
  }
  return {pass, "min (1-beta1_hat) - (1-beta2_hat) = " + fmt("%.3g", worst_gap) +
                    " at t=" + std::to_string(worst_t)};
}

// Coordinates start in [1, 2) so the relative comparison measures the
// identity rather than cancellation in values that pass through zero.
Outcome equivalence() {
  bool pass = true;
  std::string detail;
  for (auto [b1, b2] : {std::pair{0.9, 0.999}, std::pair{0.9, 0.99}}) {
    Rng rng(2026);
    std::vector<Tensor> a = {Tensor({100}, 0.0)};
    for (double& x : a[0].data()) x = 1.0 + rng.uniform();
    auto b = a;
    auto sa = OptimizerState::for_params(a);
    auto sb = OptimizerState::for_params(b);
    const auto lr = LrSchedule::fixed(1e-3);
    const auto classic = OptimizerConfig::adam(lr, b1, b2);
    const auto general = OptimizerConfig::generalized(DecaySchedule::adam_classic(b1, b2), lr);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
      const std::vector<Tensor> g = {gaussian_sample(rng, {100}, 0.0, 1.0)};
      step_adam_classic(sa, a, g, classic);
      step_generalized_adam(sb, b, g, general);
      for (std::size_t i = 0; i < 100; ++i) {
        worst = std::max(worst, std::abs(a[0][i] - b[0][i]) / std::abs(a[0][i]));
      }
    }
    if (!(worst <= 1e-12)) pass = false;
    detail += "(" + fmt("%g", b1) + "," + fmt("%g", b2) + ") max rel " + fmt("%.3g", worst) + "; ";
  }
  return {pass, detail};
}

Outcome variance_closed_forms() {
  const auto rows = bench::verify_variance(100000, 10000, default_worker_count(), 2024);
  std::string detail;
  bool pass = true;
  for (const auto& row : rows) {
    // The ordering row belongs to the next criterion.
    if (row.name.find("adamnx") != std::string::npos) continue;
    if (!row.pass) {
      pass = false;
      detail += "FAILED " + row.name + " (" + row.observed + "); ";
    }
  }
  if (pass) {
    for (const auto& row : rows) {
      if (row.name.find("E[v_hat]") != std::string::npos ||
          row.name.find("limit") != std::string::npos) {
        detail += row.name + " " + row.observed + "; ";
      }
    }
  }
  return {pass, detail};
}

Outcome variance_ordering() {
  const auto model = NoiseModel::constant(0.0, 1.0, 1);
  const std::vector<ChainMode> modes = {DecaySchedule::adamnx(0.9, 0.99), FixedBeta2{0.999}};
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto stats =
        mc_moments(model, modes, 10000, 20000, Rng(seed), default_worker_count());
    const double nx = stats[0].var_over_dims();
    const double classic = stats[1].var_over_dims();
    if (!(nx < classic)) pass = false;
    detail += fmt("%.3g", nx) + "<" + fmt("%.3g", classic) + " ";
  }
  return {pass, "Var[v_hat] AdamNX vs Adam(0.999) per seed: " + detail};
}

Outcome degeneration() {
  constexpr std::uint64_t T = 100000;
  const auto model = NoiseModel::constant(0.5, 1.0, 100);
  Rng master(77);
  Rng noise = master.derive(0);
  std::vector<Tensor> pa = {Tensor({100}, 0.0)};
  auto pb = pa;
  auto sa = OptimizerState::for_params(pa);
  auto sb = OptimizerState::for_params(pb);
  const auto lr = LrSchedule::fixed(1e-3);
  const auto nx = OptimizerConfig::generalized(DecaySchedule::adamnx(0.9, 0.99), lr);
  const auto classic = OptimizerConfig::adam(lr, 0.9, 0.999);
  StepReport ra, rb;
  Tensor last_g({100}, 0.0);
  for (std::uint64_t t = 1; t <= T; ++t) {
    const std::vector<Tensor> g = {noisy_grad(model, t, noise)};
    ra = step_generalized_adam(sa, pa, g, nx);
    rb = step_adam_classic(sb, pb, g, classic);
    if (t == T) last_g = g[0];
  }
  // Bound on the final motion: (1 - beta2_hat(T)) * max_i(g_i^2 / v_i + 1).
  double ratio = 0.0;
  const auto& v = sa.slots[0].v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ratio = std::max(ratio, last_g[i] * last_g[i] / v[i] + 1.0);
  }
  const double bound = beta2_weights(nx.schedule, T).complement * ratio;
  const double a = ra.v_rel_change.value_or(1.0);
  const double b = rb.v_rel_change.value_or(0.0);
  const bool pass = a <= 1e-6 && a <= bound && b > 1e-4;
  return {pass, "at t=1e5: AdamNX " + fmt("%.3g", a) + " (bound " + fmt("%.3g", bound) +
                    "), Adam(0.999) " + fmt("%.3g", b)};
}

Outcome gradient_correctness() {
  const auto rows = bench::gradcheck_table(7);
  std::string detail;
  for (const auto& row : rows) detail += row.name + " " + row.observed + "; ";
  return {bench::all_passed(rows), detail};
}

Outcome desk_ordering() {
  const auto cfg = bench::parse_config(std::string(ADAMNX_CONFIG_DIR) + "/blobs_mlp.json");
  std::map<std::string, double> mean;
  std::string detail;
  const std::vector<std::string> names = {"generalized:adamnx", "generalized:adafactor",
                                          "generalized:adam_classic"};
  for (const auto& name : names) {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto run_cfg = bench::with_optimizer(cfg, name);
      run_cfg.seed = seed;
      const auto record = bench::run_experiment(run_cfg);
      if (record.diverged || record.epochs.size() != cfg.epochs) {
        return {false, name + " seed " + std::to_string(seed) + " did not finish"};
      }
      sum += record.epochs.back().mean_loss;
    }
    mean[name] = sum / 5.0;
    detail += name.substr(12) + " " + fmt("%.4f", mean[name]) + "; ";
  }
  const double nx = mean["generalized:adamnx"];
  const bool beats_adafactor = nx <= mean["generalized:adafactor"];
  const bool near_classic = nx <= 1.05 * mean["generalized:adam_classic"];
  detail += std::string("AdamNX <= Adafactor: ") + (beats_adafactor ? "yes" : "no") +
            ", within 5% of AdamClassic: " + (near_classic ? "yes" : "no");
  return {beats_adafactor && near_classic, detail};
}

// First step (1-based) at which the full-objective loss is <= 1e-6, or 0.
std::uint64_t steps_to_tolerance(const Problem& problem, OptimizerConfig cfg, double eta) {
  cfg.lr = LrSchedule::fixed(eta);
  Rng rng(1);
  auto params = problem.initial_params(rng);
  auto state = OptimizerState::for_params(params);
  for (std::uint64_t t = 1; t <= 10000; ++t) {
    const auto lg = problem.loss_and_grad(params, Batch{});
    if (!std::isfinite(lg.loss)) return 0;
    try {
      step(state, params, lg.grads, cfg);
    } catch (const NonFiniteGradient&) {
      return 0;
    }
    const double after = problem.loss(params, Batch{});
    if (after <= 1e-6) return t;
  }
  return 0;
}

Outcome convex_convergence() {
  const auto problem = quadratic_problem(10, 10.0);
  const std::vector<double> grid = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3};
  const std::vector<std::string> names = {
      "adamnx", "adam",  "adamw", "sgd", "momentum_sgd", "radam",
      "lion",   "generalized:adax", "generalized:adafactor"};
  bool pass = true;
  std::string detail;
  for (const auto& name : names) {
    const auto cfg = bench::optimizer_preset(name);
    std::uint64_t best = 0;
    double best_eta = 0.0;
    for (double eta : grid) {
      const auto t = steps_to_tolerance(*problem, cfg, eta);
      if (t != 0 && (best == 0 || t < best)) {
        best = t;
        best_eta = eta;
      }
    }
    if (best == 0) {
      pass = false;
      detail += name + " never; ";
    } else {
      detail += name + " " + std::to_string(best) + "@" + fmt("%g", best_eta) + "; ";
    }
  }
  return {pass, detail};
}

Outcome smoothing_fidelity() {
  const auto p = bench::smoothing_params(62480);
  bool pass = p.step == 156 && p.window == 5.0 && std::abs(p.alpha - 1.0 / 3.0) < 1e-15;
  std::string detail = "step=" + std::to_string(p.step) + " window=" + fmt("%g", p.window) +
                       " alpha=" + fmt("%.17g", p.alpha);

  const std::vector<double> x = {3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4};
  // Exact rational values of the normalized weighted sums for alpha = 1/3.
  const std::vector<double> expected = {
      3, 1.8, 2.8421052631578947, 2.0769230769230771, 3.1990521327014219,
      5.3187969924812029, 4.143759106362312, 4.7876288659793813, 4.8603098429920193,
      4.2292632485997412, 4.4891804065128866, 5.668543363452768, 6.7847643101357962,
      6.8567561472207039, 7.5728059779246344, 6.0462131744390017, 4.6961051450242373,
      4.1303539537550202, 5.4208180884946957, 4.9470695892451921};
  const auto y = bench::ewma_adjusted(x, 1.0 / 3.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    worst = std::max(worst, std::abs(y[k] - expected[k]));
  }

  // Full pipeline at T = 62480 against downsample-then-double-sum.
  std::vector<double> series(62480);
  for (std::size_t i = 0; i < series.size(); ++i) series[i] = std::sin(0.001 * i) + 1e-4 * i;
  const auto smoothed = bench::smooth_series(series, series.size());
  std::vector<double> kept;
  for (std::size_t i = 0; i < series.size(); i += 156) kept.push_back(series[i]);
  double worst_pipeline = kept.size() == smoothed.size() ? 0.0 : 1.0;
  for (std::size_t k = 0; k < std::min(kept.size(), smoothed.size()); ++k) {
    double num = 0.0, den = 0.0, w = 1.0;
    for (std::size_t i = 0; i <= k; ++i) {
      num += w * kept[k - i];
      den += w;
      w *= 2.0 / 3.0;
    }
    worst_pipeline = std::max(worst_pipeline, std::abs(smoothed[k] - num / den));
  }
  pass = pass && worst <= 1e-12 && worst_pipeline <= 1e-12;
  detail += ", 20-point max err " + fmt("%.3g", worst) + ", pipeline max err " +
            fmt("%.3g", worst_pipeline);
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1 schedule exactness", 1, schedule_exactness},
      {"AC2 dominance of beta2_hat over beta1_hat", 1, dominance},
      {"AC3 schedule form equals bias-corrected Adam", 5, equivalence},
      {"AC4 second-moment closed forms", 120, variance_closed_forms},
      {"AC5 AdamNX variance below Adam", 120, variance_ordering},
      {"AC6 second moment freezes under AdamNX", 30, degeneration},
      {"AC7 analytic gradients", 10, gradient_correctness},
      {"AC8 blobs MLP schedule ordering", 300, desk_ordering},
      {"AC9 quadratic convergence", 30, convex_convergence},
      {"AC10 smoothing fidelity", 1, smoothing_fidelity},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      outcome.pass = false;
      outcome.detail += " [over time budget " + fmt("%g", c.budget_s) + " s]";
    }
    if (!outcome.pass) ++failed;
    std::printf("[%s] %s: %s (%.2f s)\n", outcome.pass ? "PASS" : "FAIL", c.label,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
