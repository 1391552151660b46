// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace adamnx {

/// Parameter kind used by decoupled weight decay. Rank-2 tensors are
/// matrices, everything else is not.
enum class ParamKind { Matrix, NonMatrix };

/// Dense row-major buffer of doubles with a fixed shape.
///
/// The element count always equals the product of the extents and every
/// extent is positive. Operations in this header never modify their inputs.
class Tensor {
 public:
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::vector<std::size_t> shape, std::vector<double> data);

  static Tensor scalar(double value);
  static Tensor vector(std::initializer_list<double> values);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values);
  static Tensor zeros_like(const Tensor& other);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  ParamKind kind() const noexcept {
    return shape_.size() == 2 ? ParamKind::Matrix : ParamKind::NonMatrix;
  }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  /// Row-major element access for rank-2 tensors.
  double at(std::size_t row, std::size_t col) const;
  double& at(std::size_t row, std::size_t col);

  std::size_t rows() const;
  std::size_t cols() const;

  bool same_shape(const Tensor& other) const noexcept {
    return shape_ == other.shape_;
  }
  bool all_finite() const noexcept;

  /// Same data under a different shape of equal element count.
  Tensor reshaped(std::vector<std::size_t> shape) const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

std::string shape_string(const std::vector<std::size_t>& shape);

// Elementwise arithmetic. Binary forms require equal shapes and throw
// ShapeMismatch otherwise; every form throws NonFiniteInput when an input
// element is NaN or infinite.

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
/// a / (b + guard). A zero divisor after guarding is a DomainError.
Tensor div(const Tensor& a, const Tensor& b, double guard = 0.0);
Tensor scale(const Tensor& a, double s);
Tensor square(const Tensor& a);
/// Throws DomainError on negative elements.
Tensor sqrt(const Tensor& a);
Tensor abs(const Tensor& a);
/// sign(0) == 0.
Tensor sign(const Tensor& a);
/// alpha * a + b
Tensor axpy(double alpha, const Tensor& a, const Tensor& b);

// Reductions, summed left to right in storage order.

double sum(const Tensor& a);
double mean(const Tensor& a);
double max_abs(const Tensor& a);
double dot(const Tensor& a, const Tensor& b);

}  // namespace adamnx
