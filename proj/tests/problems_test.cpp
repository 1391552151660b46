// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include <gtest/gtest.h>

#include "adamnx/errors.hpp"
#include "adamnx/optimizers.hpp"
#include "adamnx/problems/gradcheck.hpp"
#include "adamnx/problems/metrics.hpp"
#include "adamnx/problems/problem.hpp"

namespace adamnx {
namespace {

std::vector<Tensor> one(Tensor t) {
  std::vector<Tensor> v;
  v.push_back(std::move(t));
  return v;
}

std::shared_ptr<const Dataset> blobs(std::size_t n, int c, std::size_t d,
                                     double spread, std::uint64_t seed) {
  Rng rng(seed);
  return std::make_shared<const Dataset>(make_blobs(n, c, d, spread, rng));
}

std::vector<Tensor> random_point(const Problem& p, Rng& rng, double sigma) {
  std::vector<Tensor> params;
  for (const Tensor& t : p.parameter_template()) {
    params.push_back(gaussian_sample(rng, t.shape(), 0.0, sigma));
  }
  return params;
}

TEST(QuadraticTest, KnownValues) {
  const auto q1 = quadratic_problem(1, 1.0);
  const Batch all;
  const auto lg = q1->loss_and_grad(one(Tensor::vector({3.0})), all);
  EXPECT_EQ(lg.loss, 4.5);
  EXPECT_EQ(lg.grads[0][0], 3.0);

  const auto q2 = quadratic_problem(2, 100.0);
  const auto lg2 = q2->loss_and_grad(one(Tensor::vector({1.0, 1.0})), all);
  EXPECT_DOUBLE_EQ(lg2.grads[0][0], 1.0);
  EXPECT_DOUBLE_EQ(lg2.grads[0][1], 100.0);

  const auto q10 = quadratic_problem(10, 10.0);
  const auto zero = q10->loss_and_grad(one(Tensor({10}, 0.0)), all);
  EXPECT_EQ(zero.loss, 0.0);
  EXPECT_EQ(max_abs(zero.grads[0]), 0.0);
}

TEST(QuadraticTest, EigenvaluesLogSpaced) {
  const auto q = quadratic_problem(5, 16.0);
  Tensor e({5}, 0.0);
  for (std::size_t i = 0; i < 5; ++i) {
    e[i] = 1.0;
    const auto lg = q->loss_and_grad(one(e), Batch{});
    EXPECT_NEAR(lg.grads[0][i], std::pow(2.0, static_cast<double>(i)), 1e-12);
    e[i] = 0.0;
  }
  Rng rng(1);
  EXPECT_EQ(q->initial_params(rng)[0], Tensor({5}, 1.0));
  EXPECT_THROW(quadratic_problem(0, 10.0), DomainError);
  EXPECT_THROW(quadratic_problem(3, 0.5), DomainError);
}

TEST(QuadraticTest, FiniteDifferencesAreExactUpToRounding) {
  const auto q = quadratic_problem(10, 10.0);
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto params = random_point(*q, rng, 2.0);
    const auto lg = q->loss_and_grad(params, Batch{});
    const auto fd = fd_gradient(*q, params, Batch{});
    EXPECT_LE(gradient_relative_error(lg.grads, fd), 1e-9);
  }
}

TEST(RosenbrockTest, KnownValues) {
  const auto r = rosenbrock_problem(4);
  const auto at_min = r->loss_and_grad(one(Tensor({4}, 1.0)), Batch{});
  EXPECT_EQ(at_min.loss, 0.0);
  EXPECT_EQ(max_abs(at_min.grads[0]), 0.0);
  EXPECT_EQ(rosenbrock_problem(2)->loss(one(Tensor::vector({0.0, 0.0})), Batch{}),
            1.0);
  Rng rng(1);
  EXPECT_EQ(r->initial_params(rng)[0], Tensor::vector({-1.2, 1.0, -1.2, 1.0}));
  EXPECT_THROW(rosenbrock_problem(3), DomainError);
  EXPECT_THROW(rosenbrock_problem(0), DomainError);
}

TEST(RosenbrockTest, GradientAtClassicStart) {
  const auto r = rosenbrock_problem(2);
  const auto params = one(Tensor::vector({-1.2, 1.0}));
  const auto lg = r->loss_and_grad(params, Batch{});
  EXPECT_LE(gradient_relative_error(lg.grads, fd_gradient(*r, params, Batch{})),
            1e-6);
  // d/dx = -400 x (y - x^2) - 2 (1 - x), d/dy = 200 (y - x^2).
  EXPECT_NEAR(lg.grads[0][0], -215.6, 1e-10);
  EXPECT_NEAR(lg.grads[0][1], -88.0, 1e-10);
}

TEST(GradcheckTest, ConstantObjectiveHasZeroGradient) {
  class Flat final : public Problem {
   public:
    std::string name() const override { return "flat"; }
    std::vector<Tensor> parameter_template() const override {
      return one(Tensor({3}, 0.0));
    }
    std::vector<Tensor> initial_params(Rng&) const override {
      return parameter_template();
    }
    LossAndGrad loss_and_grad(std::span<const Tensor>, const Batch&) const override {
      return {7.0, parameter_template()};
    }
    double loss(std::span<const Tensor>, const Batch&) const override { return 7.0; }
  };
  const Flat flat;
  const auto fd = fd_gradient(flat, one(Tensor::vector({1, 2, 3})), Batch{});
  EXPECT_EQ(max_abs(fd[0]), 0.0);
  EXPECT_THROW(fd_gradient(flat, one(Tensor::vector({1, 2, 3})), Batch{}, 0.0),
               DomainError);
}

TEST(GradcheckTest, AnalyticMatchesFiniteDifferencesEverywhere) {
  const auto data = blobs(60, 6, 4, 1.0, 5);
  const ProblemPtr problems[] = {
      quadratic_problem(10, 10.0), rosenbrock_problem(6),
      logreg_problem(data), logreg_problem(data, 0.3),
      mlp_problem(data, {7}), mlp_problem(data, {5, 4})};
  Rng rng(9);
  Batch some;
  for (std::size_t i = 0; i < 60; i += 3) some.indices.push_back(i);
  for (const auto& p : problems) {
    for (int point = 0; point < 10; ++point) {
      const auto params = random_point(*p, rng, 0.7);
      for (const Batch& batch : {Batch{}, some}) {
        const auto lg = p->loss_and_grad(params, batch);
        EXPECT_NEAR(lg.loss, p->loss(params, batch), 1e-12 * std::abs(lg.loss));
        const auto fd = fd_gradient(*p, params, batch);
        EXPECT_LE(gradient_relative_error(lg.grads, fd), 1e-6) << p->name();
      }
    }
  }
}

TEST(ClassifierTest, ZeroParamsGiveLogC) {
  const auto data = blobs(50, 5, 3, 1.0, 1);
  const auto lr = logreg_problem(data);
  const auto zeros = lr->parameter_template();
  EXPECT_NEAR(lr->loss(zeros, Batch{}), std::log(5.0), 1e-14);

  // Zero hidden weights with zero input reach the output layer as zeros.
  Dataset flat = *data;
  flat.features = Tensor({50, 3}, 0.0);
  const auto mlp = mlp_problem(std::make_shared<const Dataset>(flat), {4});
  Rng rng(3);
  auto params = mlp->initial_params(rng);
  params[0] = Tensor::zeros_like(params[0]);
  params[2] = Tensor::zeros_like(params[2]);
  EXPECT_NEAR(mlp->loss(params, Batch{}), std::log(5.0), 1e-14);
}

TEST(ClassifierTest, ParameterKinds) {
  const auto data = blobs(30, 3, 4, 1.0, 2);
  const auto lr = logreg_problem(data)->parameter_template();
  ASSERT_EQ(lr.size(), 2u);
  EXPECT_EQ(lr[0].shape(), (std::vector<std::size_t>{4, 3}));
  EXPECT_EQ(lr[0].kind(), ParamKind::Matrix);
  EXPECT_EQ(lr[1].kind(), ParamKind::NonMatrix);
  const auto mlp = mlp_problem(data, {8, 5})->parameter_template();
  ASSERT_EQ(mlp.size(), 6u);
  EXPECT_EQ(mlp[2].shape(), (std::vector<std::size_t>{8, 5}));
  EXPECT_EQ(mlp[5].shape(), (std::vector<std::size_t>{3}));
  EXPECT_THROW(mlp_problem(data, {}), DomainError);
}

TEST(ClassifierTest, LossInvariantToBatchOrder) {
  const auto data = blobs(40, 4, 3, 1.0, 3);
  const auto mlp = mlp_problem(data, {6});
  Rng rng(4);
  const auto params = mlp->initial_params(rng);
  Batch fwd, rev;
  for (std::size_t i = 0; i < 40; i += 2) fwd.indices.push_back(i);
  rev.indices.assign(fwd.indices.rbegin(), fwd.indices.rend());
  EXPECT_NEAR(mlp->loss(params, fwd), mlp->loss(params, rev), 1e-14);
}

TEST(ClassifierTest, StableForHugeLogits) {
  const auto data = blobs(20, 3, 2, 1.0, 6);
  const auto lr = logreg_problem(data);
  auto params = lr->parameter_template();
  params[1] = Tensor::vector({800.0, -800.0, 0.0});
  const auto lg = lr->loss_and_grad(params, Batch{});
  EXPECT_TRUE(std::isfinite(lg.loss));
  for (const auto& g : lg.grads) EXPECT_TRUE(g.all_finite());
}

TEST(BlobsTest, DeterministicAndBalanced) {
  const auto a = blobs(100, 4, 3, 0.5, 10);
  const auto b = blobs(100, 4, 3, 0.5, 10);
  EXPECT_EQ(a->features, b->features);
  EXPECT_EQ(a->labels, b->labels);
  std::vector<int> counts(4, 0);
  for (int y : a->labels) ++counts[y];
  for (int c : counts) EXPECT_EQ(c, 25);
  for (std::size_t k = 0; k < 4; ++k) {
    double r2 = 0.0;
    for (std::size_t j = 0; j < 3; ++j) r2 += std::pow(a->centers->at(k, j), 2);
    EXPECT_NEAR(std::sqrt(r2), 3.0, 1e-12);
  }
  Rng rng(1);
  EXPECT_THROW(make_blobs(10, 1, 3, 1.0, rng), DomainError);
  EXPECT_THROW(make_blobs(3, 4, 3, 1.0, rng), DomainError);
  EXPECT_THROW(make_blobs(10, 2, 3, -1.0, rng), DomainError);
}

TEST(BlobsTest, ZeroSpreadIsSeparable) {
  const auto data = blobs(200, 10, 20, 0.0, 11);
  for (std::size_t i = 0; i < data->size(); ++i) {
    for (std::size_t j = 0; j < data->dim(); ++j) {
      ASSERT_EQ(data->features.at(i, j), data->centers->at(data->labels[i], j));
    }
  }
  const auto problem = logreg_problem(data);
  Rng rng(1);
  auto params = problem->initial_params(rng);
  auto state = OptimizerState::for_params(params);
  const auto cfg = OptimizerConfig::adam(LrSchedule::fixed(0.05));
  for (int t = 0; t < 200; ++t) {
    auto lg = problem->loss_and_grad(params, Batch{});
    step(state, params, lg.grads, cfg);
  }
  const auto probs = problem->predict_probs(params, data->features);
  ASSERT_TRUE(probs.has_value());
  EXPECT_EQ(topk_error(*probs, data->labels, 1), 0.0);
}

// Independent reference: classifying by the nearest true class center is
// optimal for equal-prior isotropic blobs; a well-trained logistic
// regression should come within 2 points of it.
TEST(BlobsTest, TrainedLogregApproachesNearestCenterError) {
  const auto data = blobs(1000, 10, 20, 1.0, 12);
  std::size_t nearest_wrong = 0;
  for (std::size_t i = 0; i < data->size(); ++i) {
    int best = 0;
    double best_d = INFINITY;
    for (int k = 0; k < 10; ++k) {
      double d = 0.0;
      for (std::size_t j = 0; j < 20; ++j) {
        d += std::pow(data->features.at(i, j) - data->centers->at(k, j), 2);
      }
      if (d < best_d) best_d = d, best = k;
    }
    nearest_wrong += best != data->labels[i];
  }
  const double oracle = static_cast<double>(nearest_wrong) / 1000.0;

  const auto problem = logreg_problem(data);
  Rng rng(1), batch_rng(2);
  auto params = problem->initial_params(rng);
  auto state = OptimizerState::for_params(params);
  const auto cfg = OptimizerConfig::adam(LrSchedule::linear_then_floor(0.01, 1e-4, 3000));
  for (int epoch = 0; epoch < 100; ++epoch) {
    for (const Batch& b : minibatch_sample(*data, 32, batch_rng)) {
      auto lg = problem->loss_and_grad(params, b);
      step(state, params, lg.grads, cfg);
    }
  }
  const auto probs = problem->predict_probs(params, data->features);
  const double err = topk_error(*probs, data->labels, 1);
  EXPECT_LE(err, oracle + 0.02) << "nearest-center error " << oracle;
}

TEST(MinibatchTest, PartitionsEachEpoch) {
  const auto data = blobs(103, 3, 2, 1.0, 13);
  Rng rng(7);
  const auto batches = minibatch_sample(*data, 10, rng);
  ASSERT_EQ(batches.size(), 11u);
  EXPECT_EQ(batches.back().indices.size(), 3u);
  std::vector<std::size_t> all;
  for (const auto& b : batches) all.insert(all.end(), b.indices.begin(), b.indices.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expect(103);
  std::iota(expect.begin(), expect.end(), 0);
  EXPECT_EQ(all, expect);
}

TEST(MinibatchTest, FullBatchIsShuffledDataset) {
  const auto data = blobs(50, 5, 2, 1.0, 14);
  Rng rng(8);
  const auto batches = minibatch_sample(*data, 50, rng);
  ASSERT_EQ(batches.size(), 1u);
  auto idx = batches[0].indices;
  EXPECT_FALSE(std::is_sorted(idx.begin(), idx.end()));
  std::sort(idx.begin(), idx.end());
  EXPECT_EQ(idx.front(), 0u);
  EXPECT_EQ(idx.back(), 49u);
  EXPECT_EQ(std::adjacent_find(idx.begin(), idx.end()), idx.end());
}

TEST(MinibatchTest, DeterministicUnderSeed) {
  const auto data = blobs(40, 4, 2, 1.0, 15);
  Rng a(3), b(3);
  for (int epoch = 0; epoch < 2; ++epoch) {
    const auto x = minibatch_sample(*data, 7, a);
    const auto y = minibatch_sample(*data, 7, b);
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].indices, y[i].indices);
  }
  Rng c(3);
  EXPECT_THROW(minibatch_sample(*data, 0, c), DomainError);
  EXPECT_THROW(minibatch_sample(*data, 41, c), DomainError);
}

TEST(DatasetCsvTest, RoundTrip) {
  const auto data = blobs(25, 3, 4, 1.3, 16);
  const auto path = std::filesystem::temp_directory_path() / "adamnx_blobs_rt.csv";
  write_dataset_csv(*data, path);
  const Dataset back = read_dataset_csv(path);
  EXPECT_EQ(back.features, data->features);
  EXPECT_EQ(back.labels, data->labels);
  EXPECT_EQ(back.classes, 3);
  std::filesystem::remove(path);
  EXPECT_THROW(read_dataset_csv(path), IoError);
}

// Brute-force reference: sort each row's class indices by (score desc,
// index asc) and check the label's position.
double topk_oracle(const Tensor& probs, const std::vector<int>& labels,
                   std::size_t k) {
  const std::size_t n = probs.rows(), c = probs.cols();
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return probs.at(i, a) > probs.at(i, b);
    });
    const auto pos = std::find(order.begin(), order.end(),
                               static_cast<std::size_t>(labels[i])) - order.begin();
    wrong += static_cast<std::size_t>(pos) >= k;
  }
  return static_cast<double>(wrong) / static_cast<double>(n);
}

TEST(TopkTest, Basics) {
  const Tensor p = Tensor::matrix(1, 3, {0.1, 0.7, 0.2});
  EXPECT_EQ(topk_error(p, std::vector<int>{1}, 1), 0.0);
  EXPECT_EQ(topk_error(p, std::vector<int>{0}, 2), 1.0);
  EXPECT_EQ(topk_error(p, std::vector<int>{0}, 3), 0.0);
  // Ties go to the lower class index.
  const Tensor tie = Tensor::matrix(1, 3, {0.4, 0.4, 0.2});
  EXPECT_EQ(topk_error(tie, std::vector<int>{0}, 1), 0.0);
  EXPECT_EQ(topk_error(tie, std::vector<int>{1}, 1), 1.0);
  EXPECT_THROW(topk_error(p, std::vector<int>{0, 1}, 1), ShapeMismatch);
  EXPECT_THROW(topk_error(p, std::vector<int>{0}, 4), DomainError);
}

TEST(TopkTest, MatchesBruteForceAndIsMonotone) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor probs({30, 10}, 0.0);
    // Coarse values so ties occur.
    for (double& v : probs.data()) v = static_cast<double>(rng.uniform_index(5));
    std::vector<int> labels(30);
    for (int& y : labels) y = static_cast<int>(rng.uniform_index(10));
    double prev = 1.0;
    for (std::size_t k = 1; k <= 10; ++k) {
      const double e = topk_error(probs, labels, k);
      EXPECT_EQ(e, topk_oracle(probs, labels, k));
      EXPECT_LE(e, prev);
      prev = e;
    }
    EXPECT_EQ(prev, 0.0);
  }
}

}  // namespace
}  // namespace adamnx
