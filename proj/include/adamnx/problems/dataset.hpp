// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "adamnx/numerics/rng.hpp"
#include "adamnx/numerics/tensor.hpp"

namespace adamnx {

/// Labelled feature matrix for classification problems.
struct Dataset {
  Tensor features;           // n x d
  std::vector<int> labels;   // n entries in [0, classes)
  int classes = 0;
  std::uint64_t seed = 0;    // generator seed, 0 for imported data
  /// Class centers (classes x d) when generated by make_blobs.
  std::optional<Tensor> centers;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return features.cols(); }
};

/// Gaussian blobs: `classes` centers drawn uniformly on the sphere of the
/// given radius, then n points assigned round-robin to classes (balanced)
/// and perturbed by isotropic N(0, spread^2) noise. Requires classes >= 2,
/// n >= classes, d >= 1, spread >= 0.
Dataset make_blobs(std::size_t n, int classes, std::size_t d, double spread,
                   Rng& rng, double radius = 3.0);

/// A subset of dataset rows; empty means "every row" for problems without a
/// dataset.
struct Batch {
  std::vector<std::size_t> indices;
};

/// One epoch of shuffled mini-batches. The dataset is permuted with a
/// Fisher-Yates shuffle and cut into consecutive chunks of batch_size; the
/// last chunk holds the remainder. Requires 1 <= batch_size <= n.
std::vector<Batch> minibatch_sample(const Dataset& dataset,
                                    std::size_t batch_size, Rng& rng);

/// CSV with header x0,...,x{d-1},label and one row per sample.
void write_dataset_csv(const Dataset& dataset,
                       const std::filesystem::path& path);
/// Inverse of write_dataset_csv. `classes` is max(label) + 1.
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace adamnx
