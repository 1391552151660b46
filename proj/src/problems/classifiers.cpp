// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include <algorithm>
#include <cmath>

#include "adamnx/errors.hpp"
#include "adamnx/problems/problem.hpp"

namespace adamnx {
namespace {

// Row-major B x width activations.
struct Activations {
  std::size_t rows = 0;
  std::vector<std::vector<double>> layers;  // layers[0] is the input
  std::vector<double> logits;
};

/// Dense tanh layers followed by a linear softmax layer. With no hidden
/// layers this is multinomial logistic regression.
class DenseSoftmaxNet final : public Problem {
 public:
  DenseSoftmaxNet(std::string name, std::shared_ptr<const Dataset> dataset,
                  std::vector<std::size_t> hidden, double l2, bool random_init)
      : name_(std::move(name)),
        dataset_(std::move(dataset)),
        l2_(l2),
        random_init_(random_init) {
    widths_.push_back(dataset_->dim());
    widths_.insert(widths_.end(), hidden.begin(), hidden.end());
    widths_.push_back(static_cast<std::size_t>(dataset_->classes));
  }

  std::string name() const override { return name_; }
  const Dataset* dataset() const override { return dataset_.get(); }

  std::vector<Tensor> parameter_template() const override {
    std::vector<Tensor> params;
    for (std::size_t k = 0; k + 1 < widths_.size(); ++k) {
      params.emplace_back(std::vector<std::size_t>{widths_[k], widths_[k + 1]}, 0.0);
      params.emplace_back(std::vector<std::size_t>{widths_[k + 1]}, 0.0);
    }
    return params;
  }

  std::vector<Tensor> initial_params(Rng& rng) const override {
    auto params = parameter_template();
    if (!random_init_) return params;
    for (std::size_t k = 0; k + 1 < widths_.size(); ++k) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(widths_[k]));
      for (double& w : params[2 * k].data()) w = bound * (2.0 * rng.uniform() - 1.0);
    }
    return params;
  }

  double loss(std::span<const Tensor> params, const Batch& batch) const override {
    check_params(params);
    const auto rows = gather(batch);
    const Activations acts = forward(params, rows);
    double total = 0.0;
    for (std::size_t r = 0; r < acts.rows; ++r) {
      total += row_cross_entropy(acts, r, dataset_->labels[rows[r]], nullptr);
    }
    return total / static_cast<double>(acts.rows) + penalty(params);
  }

  LossAndGrad loss_and_grad(std::span<const Tensor> params,
                            const Batch& batch) const override {
    check_params(params);
    const auto rows = gather(batch);
    const Activations acts = forward(params, rows);
    const std::size_t batch_rows = acts.rows;
    const std::size_t classes = widths_.back();
    const double inv_b = 1.0 / static_cast<double>(batch_rows);

    // dL/dlogits = (softmax - onehot) / B
    std::vector<double> delta(batch_rows * classes);
    double total = 0.0;
    for (std::size_t r = 0; r < batch_rows; ++r) {
      total += row_cross_entropy(acts, r, dataset_->labels[rows[r]],
                                 &delta[r * classes]);
    }
    for (double& x : delta) x *= inv_b;

    std::vector<Tensor> grads = parameter_template();
    const std::size_t layers = widths_.size() - 1;
    for (std::size_t k = layers; k-- > 0;) {
      const std::size_t fan_in = widths_[k];
      const std::size_t fan_out = widths_[k + 1];
      const auto& input = acts.layers[k];
      auto dw = grads[2 * k].data();
      auto db = grads[2 * k + 1].data();
      for (std::size_t r = 0; r < batch_rows; ++r) {
        const double* in_row = &input[r * fan_in];
        const double* d_row = &delta[r * fan_out];
        for (std::size_t i = 0; i < fan_in; ++i) {
          const double a = in_row[i];
          double* dw_row = &dw[i * fan_out];
          for (std::size_t j = 0; j < fan_out; ++j) dw_row[j] += a * d_row[j];
        }
        for (std::size_t j = 0; j < fan_out; ++j) db[j] += d_row[j];
      }
      if (l2_ != 0.0) {
        auto w = params[2 * k].data();
        for (std::size_t i = 0; i < dw.size(); ++i) dw[i] += l2_ * w[i];
      }
      if (k == 0) break;

      // Back through W_k and the tanh of the layer below.
      auto w = params[2 * k].data();
      std::vector<double> below(batch_rows * fan_in, 0.0);
      for (std::size_t r = 0; r < batch_rows; ++r) {
        const double* d_row = &delta[r * fan_out];
        for (std::size_t i = 0; i < fan_in; ++i) {
          const double* w_row = &w[i * fan_out];
          double s = 0.0;
          for (std::size_t j = 0; j < fan_out; ++j) s += w_row[j] * d_row[j];
          const double h = input[r * fan_in + i];
          below[r * fan_in + i] = s * (1.0 - h * h);
        }
      }
      delta = std::move(below);
    }
    return {total * inv_b + penalty(params), std::move(grads)};
  }

  std::optional<Tensor> predict_probs(std::span<const Tensor> params,
                                      const Tensor& features) const override {
    check_params(params);
    if (features.rank() != 2 || features.cols() != widths_.front()) {
      throw ShapeMismatch("predict_probs: feature width mismatch");
    }
    const std::size_t n = features.rows();
    const std::size_t classes = widths_.back();
    Activations acts = forward_rows(params, features, nullptr, n);
    Tensor probs({n, classes}, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const double* z = &acts.logits[r * classes];
      const double zmax = *std::max_element(z, z + classes);
      double norm = 0.0;
      for (std::size_t j = 0; j < classes; ++j) {
        probs.at(r, j) = std::exp(z[j] - zmax);
        norm += probs.at(r, j);
      }
      for (std::size_t j = 0; j < classes; ++j) probs.at(r, j) /= norm;
    }
    return probs;
  }

 private:
  void check_params(std::span<const Tensor> params) const {
    const auto expected = parameter_template();
    if (params.size() != expected.size()) {
      throw ShapeMismatch(name_ + ": expected " + std::to_string(expected.size()) +
                          " parameter tensors, got " +
                          std::to_string(params.size()));
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (!params[i].same_shape(expected[i])) {
        throw ShapeMismatch(name_ + ": parameter " + std::to_string(i) +
                            " has shape " + shape_string(params[i].shape()) +
                            ", expected " + shape_string(expected[i].shape()));
      }
    }
  }

  std::vector<std::size_t> gather(const Batch& batch) const {
    if (!batch.indices.empty()) {
      for (std::size_t idx : batch.indices) {
        if (idx >= dataset_->size()) {
          throw DomainError(name_ + ": batch index out of range");
        }
      }
      return batch.indices;
    }
    std::vector<std::size_t> all(dataset_->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }

  Activations forward(std::span<const Tensor> params,
                      const std::vector<std::size_t>& rows) const {
    return forward_rows(params, dataset_->features, &rows, rows.size());
  }

  // Forward pass over either the listed rows of `features` or, when
  // `rows` is null, its first n rows.
  Activations forward_rows(std::span<const Tensor> params,
                           const Tensor& features,
                           const std::vector<std::size_t>* rows,
                           std::size_t n) const {
    Activations acts;
    acts.rows = n;
    const std::size_t d = widths_.front();
    std::vector<double> input(n * d);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t src = rows ? (*rows)[r] : r;
      for (std::size_t j = 0; j < d; ++j) input[r * d + j] = features.at(src, j);
    }
    acts.layers.push_back(std::move(input));

    const std::size_t layers = widths_.size() - 1;
    for (std::size_t k = 0; k < layers; ++k) {
      const std::size_t fan_in = widths_[k];
      const std::size_t fan_out = widths_[k + 1];
      auto w = params[2 * k].data();
      auto b = params[2 * k + 1].data();
      const auto& in = acts.layers.back();
      std::vector<double> out(n * fan_out);
      for (std::size_t r = 0; r < n; ++r) {
        double* o = &out[r * fan_out];
        for (std::size_t j = 0; j < fan_out; ++j) o[j] = b[j];
        for (std::size_t i = 0; i < fan_in; ++i) {
          const double a = in[r * fan_in + i];
          const double* w_row = &w[i * fan_out];
          for (std::size_t j = 0; j < fan_out; ++j) o[j] += a * w_row[j];
        }
      }
      if (k + 1 < layers) {
        for (double& x : out) x = std::tanh(x);
        acts.layers.push_back(std::move(out));
      } else {
        acts.logits = std::move(out);
      }
    }
    return acts;
  }

  // Cross-entropy of one row with max-subtracted log-sum-exp. Writes
  // softmax - onehot into `delta` when non-null.
  double row_cross_entropy(const Activations& acts, std::size_t r, int label,
                           double* delta) const {
    const std::size_t classes = widths_.back();
    const double* z = &acts.logits[r * classes];
    const double zmax = *std::max_element(z, z + classes);
    double norm = 0.0;
    for (std::size_t j = 0; j < classes; ++j) norm += std::exp(z[j] - zmax);
    const double log_norm = std::log(norm);
    if (delta) {
      for (std::size_t j = 0; j < classes; ++j) {
        delta[j] = std::exp(z[j] - zmax - log_norm);
      }
      delta[static_cast<std::size_t>(label)] -= 1.0;
    }
    return zmax + log_norm - z[static_cast<std::size_t>(label)];
  }

  double penalty(std::span<const Tensor> params) const {
    if (l2_ == 0.0) return 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < params.size(); k += 2) {
      for (double w : params[k].data()) s += w * w;
    }
    return 0.5 * l2_ * s;
  }

  std::string name_;
  std::shared_ptr<const Dataset> dataset_;
  std::vector<std::size_t> widths_;
  double l2_;
  bool random_init_;
};

void require_dataset(const std::shared_ptr<const Dataset>& dataset,
                     const char* who) {
  if (!dataset || dataset->size() == 0) {
    throw DomainError(std::string(who) + ": dataset must be non-empty");
  }
  if (dataset->classes < 2) {
    throw DomainError(std::string(who) + ": need at least two classes");
  }
  for (int label : dataset->labels) {
    if (label < 0 || label >= dataset->classes) {
      throw DomainError(std::string(who) + ": label out of range");
    }
  }
}

}  // namespace

ProblemPtr logreg_problem(std::shared_ptr<const Dataset> dataset, double l2) {
  require_dataset(dataset, "logreg_problem");
  if (!(l2 >= 0.0)) throw DomainError("logreg_problem: l2 must be >= 0");
  return std::make_shared<DenseSoftmaxNet>("logreg", std::move(dataset),
                                           std::vector<std::size_t>{}, l2, false);
}

ProblemPtr mlp_problem(std::shared_ptr<const Dataset> dataset,
                       std::vector<std::size_t> hidden_sizes) {
  require_dataset(dataset, "mlp_problem");
  if (hidden_sizes.empty()) {
    throw DomainError("mlp_problem: hidden_sizes must be non-empty");
  }
  if (std::find(hidden_sizes.begin(), hidden_sizes.end(), 0u) != hidden_sizes.end()) {
    throw DomainError("mlp_problem: hidden sizes must be positive");
  }
  return std::make_shared<DenseSoftmaxNet>("mlp", std::move(dataset),
                                           std::move(hidden_sizes), 0.0, true);
}

}  // namespace adamnx
