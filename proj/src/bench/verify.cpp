// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/bench/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "adamnx/noiselab.hpp"
#include "adamnx/problems/gradcheck.hpp"
#include "adamnx/problems/problem.hpp"
#include "adamnx/schedules.hpp"

namespace adamnx::bench {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

CheckRow row(std::string name, std::string expected, std::string observed,
             bool pass) {
  return {std::move(name), std::move(expected), std::move(observed), pass};
}

CheckRow within(std::string name, double expected, double observed,
                double rel_tol) {
  const double rel = std::abs(observed - expected) / std::abs(expected);
  return row(std::move(name),
             sci(expected) + " (rel tol " + sci(rel_tol) + ")",
             sci(observed) + " (rel err " + sci(rel) + ")", rel <= rel_tol);
}

constexpr std::uint64_t kHorizon = 1'000'000;

}  // namespace

bool all_passed(std::span<const CheckRow> rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const CheckRow& r) { return r.pass; });
}

void print_check_table(std::ostream& os, std::span<const CheckRow> rows) {
  std::size_t name_w = 5, exp_w = 8;
  for (const CheckRow& r : rows) {
    name_w = std::max(name_w, r.name.size());
    exp_w = std::max(exp_w, r.expected.size());
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  os << pad("check", name_w) << "  " << pad("expected", exp_w)
     << "  observed  result\n";
  for (const CheckRow& r : rows) {
    os << pad(r.name, name_w) << "  " << pad(r.expected, exp_w) << "  "
       << r.observed << "  " << (r.pass ? "PASS" : "FAIL") << '\n';
  }
}

std::vector<CheckRow> verify_schedules() {
  std::vector<CheckRow> rows;

  const DecaySchedule families[] = {
      DecaySchedule::adam_classic(), DecaySchedule::adamnx(),
      DecaySchedule::adax(), DecaySchedule::adafactor()};
  for (const DecaySchedule& s : families) {
    const EmaWeights w = beta2_weights(s, 1);
    rows.push_back(row(std::string(to_string(s.family)) + " beta2_hat(1)",
                       "0 exactly", sci(w.decay),
                       w.decay == 0.0 && w.complement == 1.0));
  }

  // Every t up to the horizon; the complement keeps full relative precision
  // after beta2_hat itself has rounded to 1.
  const DecaySchedule nx = DecaySchedule::adamnx();
  bool complement_strict = true, decay_monotone = true, dominance = true;
  bool in_range = true, sums_to_one = true, close_to_one = true;
  std::uint64_t first_bad = 0;
  double worst_gap = 0.0;
  EmaWeights prev = beta2_weights(nx, 1);
  for (std::uint64_t t = 2; t <= kHorizon; ++t) {
    const EmaWeights w = beta2_weights(nx, t);
    if (!(w.complement < prev.complement) && complement_strict) {
      complement_strict = false;
      first_bad = t;
    }
    decay_monotone = decay_monotone && w.decay >= prev.decay;
    in_range = in_range && w.decay >= 0.0 && w.decay <= 1.0 && w.complement > 0.0;
    sums_to_one = sums_to_one && std::abs(w.decay + w.complement - 1.0) <= 1e-15;
    if (w.decay < beta1_hat(nx.beta1, t)) dominance = false;
    if (t >= 100'000) {
      worst_gap = std::max(worst_gap, 1.0 - w.decay);
      close_to_one = close_to_one && 1.0 - w.decay < 1e-6;
    }
    prev = w;
  }
  rows.push_back(row("adamnx 1-beta2_hat strictly decreasing, t<=1e6",
                     "strict", complement_strict ? "strict" :
                     "breaks at t=" + std::to_string(first_bad),
                     complement_strict));
  rows.push_back(row("adamnx beta2_hat nondecreasing, t<=1e6", "monotone",
                     decay_monotone ? "monotone" : "not monotone",
                     decay_monotone));
  rows.push_back(row("adamnx beta2_hat in [0,1], weights sum to 1", "true",
                     in_range && sums_to_one ? "true" : "false",
                     in_range && sums_to_one));
  rows.push_back(row("adamnx |beta2_hat-1| for t>=1e5", "< 1e-6",
                     sci(worst_gap), close_to_one));
  rows.push_back(row("adamnx beta2_hat(t) >= beta1_hat(t), t<=1e6", "true",
                     dominance ? "true" : "false", dominance));

  // Classic bias correction approaches beta2 from below.
  const DecaySchedule classic = DecaySchedule::adam_classic();
  const double late = beta2_hat(classic, 100'000);
  rows.push_back(within("adam_classic beta2_hat(1e5) -> beta2", classic.beta2,
                        late, 1e-12));

  const double two_nx = beta2_hat(nx, 2);
  const double a = std::pow(0.99, 0.01);
  rows.push_back(within("adamnx beta2_hat(2)", 1.0 / (1.0 + a), two_nx, 1e-12));

  const LrSchedule lr = LrSchedule::linear_then_floor(1e-3, 1e-5, 1000);
  const bool lr_ends = lr_at(lr, 0) == 1e-3 && lr_at(lr, 1000) == 1e-5 &&
                       lr_at(lr, 5000) == 1e-5;
  bool lr_monotone = true;
  for (std::uint64_t t = 1; t <= 1100; ++t) {
    lr_monotone = lr_monotone && lr_at(lr, t) <= lr_at(lr, t - 1);
  }
  rows.push_back(row("lr linear_then_floor endpoints and floor",
                     "1e-3 at 0, 1e-5 from t1", lr_ends ? "ok" : "mismatch",
                     lr_ends));
  rows.push_back(row("lr linear_then_floor nonincreasing", "true",
                     lr_monotone ? "true" : "false", lr_monotone));
  return rows;
}

std::vector<CheckRow> verify_variance(std::size_t chains, std::uint64_t t,
                                      std::size_t workers,
                                      std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const double beta2 = 0.999;
  const NoiseModel model = NoiseModel::constant(0.0, 1.0, 1);
  const Rng master(seed);

  const ChainMode modes[] = {FixedBeta2{beta2}, DecaySchedule::adamnx()};
  const auto stats = mc_moments(model, modes, t, chains, master, workers);
  const ChainStats& adam = stats[0];
  const ChainStats& nx = stats[1];
  const std::string at = " (t=" + std::to_string(t) + ")";

  rows.push_back(within("E[v_hat] adam 0.999" + at,
                        closed_form_exp(beta2, 1.0, 0.0, t),
                        adam.mean_over_dims(), 0.01));
  rows.push_back(within("Var[v_hat] adam 0.999 vs limit" + at,
                        closed_form_var_limit(beta2, 1.0, 0.0),
                        adam.var_over_dims(), 0.05));
  rows.push_back(within("Var[v_hat] adam 0.999 vs finite t" + at,
                        closed_form_var(beta2, 1.0, 0.0, t),
                        adam.var_over_dims(), 0.05));
  for (std::uint64_t early : {std::uint64_t{1}, std::uint64_t{100}}) {
    const ChainStats s = mc_moments(model, FixedBeta2{beta2}, early, chains,
                                    master.derive(early), workers);
    rows.push_back(within("Var[v_hat] adam 0.999 vs finite t (t=" +
                              std::to_string(early) + ")",
                          closed_form_var(beta2, 1.0, 0.0, early),
                          s.var_over_dims(), 0.05));
  }
  rows.push_back(row("Var[v_hat] adamnx < adam 0.999 (shared noise)" + at,
                     "adamnx smaller",
                     sci(nx.var_over_dims()) + " vs " + sci(adam.var_over_dims()),
                     nx.var_over_dims() < adam.var_over_dims()));
  return rows;
}

std::vector<CheckRow> gradcheck_table(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  Rng rng(seed);
  Rng data_rng = rng.derive(100);
  auto data = std::make_shared<const Dataset>(make_blobs(40, 4, 5, 1.0, data_rng));

  struct Case {
    std::string label;
    ProblemPtr problem;
    double centre;
    double scale;
  };
  const Case cases[] = {
      {"quadratic(dim=10, cond=10)", quadratic_problem(10, 10.0), 0.0, 1.0},
      {"rosenbrock(n=6)", rosenbrock_problem(6), 0.0, 1.0},
      {"logreg(blobs 40x5, C=4)", logreg_problem(data, 0.1), 0.0, 0.5},
      {"mlp(blobs 40x5, C=4, hidden 6,5)", mlp_problem(data, {6, 5}), 0.0, 0.5},
  };
  for (const Case& c : cases) {
    double worst = 0.0;
    for (int point = 0; point < 10; ++point) {
      std::vector<Tensor> params;
      for (const Tensor& shape : c.problem->parameter_template()) {
        params.push_back(gaussian_sample(rng, shape.shape(), c.centre, c.scale));
      }
      const Batch batch;
      const LossAndGrad lg = c.problem->loss_and_grad(params, batch);
      const auto fd = fd_gradient(*c.problem, params, batch);
      worst = std::max(worst, gradient_relative_error(lg.grads, fd));
    }
    rows.push_back(row(c.label + " max rel err, 10 points", "<= 1e-6",
                       sci(worst), worst <= 1e-6));
  }
  return rows;
}

}  // namespace adamnx::bench
