// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/noiselab.hpp"

#include <cmath>

#include "adamnx/errors.hpp"
#include "adamnx/numerics/parallel.hpp"

namespace adamnx {
namespace {

void validate_model(const NoiseModel& model) {
  if (!(model.sigma >= 0.0)) throw DomainError("noise model: sigma must be >= 0");
  if (model.dim < 1) throw DomainError("noise model: dim must be >= 1");
  if (!model.full_grad) throw DomainError("noise model: full_grad is empty");
}

void require_beta2(double beta2, const char* who) {
  if (!(beta2 > 0.0 && beta2 < 1.0)) {
    throw DomainError(std::string(who) + ": beta2 must lie in (0, 1)");
  }
}

// Per-step EMA weights plus the factor that turns the buffer into the
// reported estimate, tabulated once for t = 1..T and shared by all chains.
struct ChainTable {
  std::vector<double> decay;
  std::vector<double> complement;
  std::vector<double> readout;
};

ChainTable tabulate(const ChainMode& mode, std::uint64_t T) {
  ChainTable table;
  table.decay.resize(T);
  table.complement.resize(T);
  table.readout.resize(T);
  if (const auto* schedule = std::get_if<DecaySchedule>(&mode)) {
    validate(*schedule);
    for (std::uint64_t t = 1; t <= T; ++t) {
      const EmaWeights w = beta2_weights(*schedule, t);
      table.decay[t - 1] = w.decay;
      table.complement[t - 1] = w.complement;
      table.readout[t - 1] = 1.0;
    }
  } else {
    const double b2 = std::get<FixedBeta2>(mode).beta2;
    require_beta2(b2, "fixed-beta2 chain");
    const double log_b2 = std::log(b2);
    for (std::uint64_t t = 1; t <= T; ++t) {
      table.decay[t - 1] = b2;
      table.complement[t - 1] = 1.0 - b2;
      table.readout[t - 1] = -1.0 / std::expm1(static_cast<double>(t) * log_b2);
    }
  }
  return table;
}

// Draws g_t into `g` given the deterministic part in `base` (or recomputed
// into `base` when the model varies with t).
void draw_gradient(const NoiseModel& model, std::uint64_t t, Rng& rng,
                   std::span<double> base, std::span<double> g) {
  if (!model.time_invariant) model.full_grad(t, base);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = base[i] + model.sigma * rng.normal();
  }
}

}  // namespace

NoiseModel NoiseModel::constant(double g, double sigma, std::size_t dim) {
  NoiseModel model;
  model.sigma = sigma;
  model.dim = dim;
  model.time_invariant = true;
  model.full_grad = [g](std::uint64_t, std::span<double> out) {
    for (double& x : out) x = g;
  };
  return model;
}

Tensor noisy_grad(const NoiseModel& model, std::uint64_t t, Rng& rng) {
  validate_model(model);
  Tensor base({model.dim}, 0.0);
  model.full_grad(t, base.data());
  Tensor g = Tensor::zeros_like(base);
  for (std::size_t i = 0; i < model.dim; ++i) {
    g[i] = base[i] + model.sigma * rng.normal();
  }
  return g;
}

std::vector<Tensor> second_moment_chain(const NoiseModel& model,
                                        const ChainMode& mode, std::uint64_t T,
                                        Rng& rng) {
  validate_model(model);
  if (T < 1) throw DomainError("second_moment_chain: T must be >= 1");
  const ChainTable table = tabulate(mode, T);
  std::vector<double> base(model.dim);
  std::vector<double> g(model.dim);
  std::vector<double> v(model.dim, 0.0);
  model.full_grad(1, base);

  std::vector<Tensor> trajectory;
  trajectory.reserve(T);
  for (std::uint64_t t = 1; t <= T; ++t) {
    draw_gradient(model, t, rng, base, g);
    const double decay = table.decay[t - 1];
    const double complement = table.complement[t - 1];
    Tensor estimate({model.dim}, 0.0);
    for (std::size_t i = 0; i < model.dim; ++i) {
      v[i] = decay * v[i] + complement * g[i] * g[i];
      estimate[i] = v[i] * table.readout[t - 1];
    }
    trajectory.push_back(std::move(estimate));
  }
  return trajectory;
}

double ChainStats::mean_over_dims() const { return mean(empirical_mean); }

double ChainStats::var_over_dims() const { return mean(empirical_var); }

std::vector<ChainStats> mc_moments(const NoiseModel& model,
                                   std::span<const ChainMode> modes,
                                   std::uint64_t t_probe, std::size_t n_chains,
                                   const Rng& master, std::size_t workers) {
  validate_model(model);
  if (t_probe < 1) throw DomainError("mc_moments: t_probe must be >= 1");
  if (n_chains < 2) throw DomainError("mc_moments: n_chains must be >= 2");
  if (modes.empty()) return {};

  std::vector<ChainTable> tables;
  tables.reserve(modes.size());
  for (const auto& mode : modes) tables.push_back(tabulate(mode, t_probe));

  const std::size_t dim = model.dim;
  const std::size_t n_modes = modes.size();
  // finals[(chain * n_modes + mode) * dim + i]
  std::vector<double> finals(n_chains * n_modes * dim);

  parallel_for(n_chains, workers, [&](std::size_t chain) {
    Rng rng = master.derive(chain);
    std::vector<double> base(dim);
    std::vector<double> g(dim);
    std::vector<double> v(n_modes * dim, 0.0);
    model.full_grad(1, base);
    for (std::uint64_t t = 1; t <= t_probe; ++t) {
      draw_gradient(model, t, rng, base, g);
      for (std::size_t k = 0; k < n_modes; ++k) {
        const double decay = tables[k].decay[t - 1];
        const double complement = tables[k].complement[t - 1];
        double* vk = &v[k * dim];
        for (std::size_t i = 0; i < dim; ++i) {
          vk[i] = decay * vk[i] + complement * g[i] * g[i];
        }
      }
    }
    for (std::size_t k = 0; k < n_modes; ++k) {
      const double readout = tables[k].readout[t_probe - 1];
      for (std::size_t i = 0; i < dim; ++i) {
        finals[(chain * n_modes + k) * dim + i] = v[k * dim + i] * readout;
      }
    }
  });

  // Two-pass reduction in chain order keeps the result independent of the
  // worker count.
  std::vector<ChainStats> stats;
  stats.reserve(n_modes);
  const double n = static_cast<double>(n_chains);
  for (std::size_t k = 0; k < n_modes; ++k) {
    Tensor mu({dim}, 0.0);
    Tensor var({dim}, 0.0);
    for (std::size_t c = 0; c < n_chains; ++c) {
      for (std::size_t i = 0; i < dim; ++i) mu[i] += finals[(c * n_modes + k) * dim + i];
    }
    for (std::size_t i = 0; i < dim; ++i) mu[i] /= n;
    for (std::size_t c = 0; c < n_chains; ++c) {
      for (std::size_t i = 0; i < dim; ++i) {
        const double d = finals[(c * n_modes + k) * dim + i] - mu[i];
        var[i] += d * d;
      }
    }
    for (std::size_t i = 0; i < dim; ++i) var[i] /= (n - 1.0);
    stats.push_back({t_probe, std::move(mu), std::move(var), n_chains});
  }
  return stats;
}

ChainStats mc_moments(const NoiseModel& model, const ChainMode& mode,
                      std::uint64_t t_probe, std::size_t n_chains,
                      const Rng& master, std::size_t workers) {
  return mc_moments(model, std::span<const ChainMode>(&mode, 1), t_probe,
                    n_chains, master, workers)
      .front();
}

double closed_form_exp(double beta2, double sigma, double g, std::uint64_t t) {
  require_beta2(beta2, "closed_form_exp");
  if (t < 1) throw DomainError("closed_form_exp: t must be >= 1");
  return sigma * sigma + g * g;
}

double closed_form_var(double beta2, double sigma, double g, std::uint64_t t) {
  require_beta2(beta2, "closed_form_var");
  if (t < 1) throw DomainError("closed_form_var: t must be >= 1");
  const double s2 = sigma * sigma;
  const double noise_term = 2.0 * s2 * s2 + 4.0 * s2 * g * g;
  // (1-b)^2 / (1-b^2) = (1-b)/(1+b) and (1-b^{2t})/(1-b^t)^2 = (1+b^t)/(1-b^t).
  const double bt = std::exp(static_cast<double>(t) * std::log(beta2));
  const double one_minus_bt = -std::expm1(static_cast<double>(t) * std::log(beta2));
  return (1.0 - beta2) / (1.0 + beta2) * (1.0 + bt) / one_minus_bt * noise_term;
}

double closed_form_var_limit(double beta2, double sigma, double g) {
  require_beta2(beta2, "closed_form_var_limit");
  const double s2 = sigma * sigma;
  return (1.0 - beta2) / (1.0 + beta2) * (2.0 * s2 * s2 + 4.0 * s2 * g * g);
}

}  // namespace adamnx
