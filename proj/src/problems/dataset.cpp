// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/problems/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "adamnx/errors.hpp"
#include "adamnx/numerics/format.hpp"

namespace adamnx {

Dataset make_blobs(std::size_t n, int classes, std::size_t d, double spread,
                   Rng& rng, double radius) {
  std::vector<std::string> issues;
  if (classes < 2) issues.push_back("make_blobs: classes must be >= 2");
  if (n < static_cast<std::size_t>(std::max(classes, 1))) {
    issues.push_back("make_blobs: n must be >= classes");
  }
  if (d < 1) issues.push_back("make_blobs: d must be >= 1");
  if (!(spread >= 0.0)) issues.push_back("make_blobs: spread must be >= 0");
  if (!(radius > 0.0)) issues.push_back("make_blobs: radius must be > 0");
  if (!issues.empty()) throw DomainError(issues.front());

  const std::uint64_t seed = rng.seed();
  const auto c = static_cast<std::size_t>(classes);
  Tensor centers({c, d}, 0.0);
  for (std::size_t k = 0; k < c; ++k) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double z = rng.normal();
        centers.at(k, j) = z;
        norm2 += z * z;
      }
    } while (norm2 == 0.0);
    const double s = radius / std::sqrt(norm2);
    for (std::size_t j = 0; j < d; ++j) centers.at(k, j) *= s;
  }

  Dataset ds{Tensor({n, d}, 0.0), std::vector<int>(n), classes, seed, centers};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i % c;
    ds.labels[i] = static_cast<int>(k);
    for (std::size_t j = 0; j < d; ++j) {
      ds.features.at(i, j) = centers.at(k, j) + spread * rng.normal();
    }
  }
  return ds;
}

std::vector<Batch> minibatch_sample(const Dataset& dataset,
                                    std::size_t batch_size, Rng& rng) {
  const std::size_t n = dataset.size();
  if (batch_size < 1 || batch_size > n) {
    throw DomainError("minibatch_sample: batch_size must lie in [1, " +
                      std::to_string(n) + "]");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i));
    std::swap(order[i - 1], order[j]);
  }
  std::vector<Batch> batches;
  batches.reserve((n + batch_size - 1) / batch_size);
  for (std::size_t start = 0; start < n; start += batch_size) {
    const std::size_t end = std::min(n, start + batch_size);
    batches.push_back({std::vector<std::size_t>(order.begin() + start,
                                                order.begin() + end)});
  }
  return batches;
}

void write_dataset_csv(const Dataset& dataset,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const std::size_t d = dataset.dim();
  for (std::size_t j = 0; j < d; ++j) out << 'x' << j << ',';
  out << "label\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out << format_double(dataset.features.at(i, j)) << ',';
    }
    out << dataset.labels[i] << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  const std::size_t columns = split_csv_line(line).size();
  if (columns < 2) throw ParseError(path.string() + ": need features and label");
  const std::size_t d = columns - 1;

  std::vector<double> values;
  std::vector<int> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != columns) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected " + std::to_string(columns) + " fields");
    }
    for (std::size_t j = 0; j < d; ++j) values.push_back(parse_double(fields[j]));
    const double label = parse_double(fields[d]);
    if (label < 0 || label != std::floor(label)) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": label must be a non-negative integer");
    }
    labels.push_back(static_cast<int>(label));
  }
  if (labels.empty()) throw ParseError(path.string() + ": no rows");
  const std::size_t n = labels.size();
  const int classes = *std::max_element(labels.begin(), labels.end()) + 1;
  return Dataset{Tensor({n, d}, std::move(values)), std::move(labels), classes,
                 0, std::nullopt};
}

}  // namespace adamnx
