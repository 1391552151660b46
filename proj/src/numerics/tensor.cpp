// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/numerics/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "adamnx/errors.hpp"

namespace adamnx {
namespace {

std::size_t element_count(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t extent : shape) {
    if (extent == 0) {
      throw ShapeMismatch("tensor extents must be positive, got " +
                          shape_string(shape));
    }
    n *= extent;
  }
  return n;
}

void require_finite(const Tensor& a, const char* op) {
  if (!a.all_finite()) {
    throw NonFiniteInput(std::string(op) + ": input contains NaN or inf");
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.same_shape(b)) {
    throw ShapeMismatch(std::string(op) + ": " + shape_string(a.shape()) +
                        " vs " + shape_string(b.shape()));
  }
}

template <typename F>
Tensor map_unary(const Tensor& a, const char* op, F f) {
  require_finite(a, op);
  Tensor out = Tensor::zeros_like(a);
  auto src = a.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = f(src[i]);
  return out;
}

template <typename F>
Tensor map_binary(const Tensor& a, const Tensor& b, const char* op, F f) {
  require_same_shape(a, b, op);
  require_finite(a, op);
  require_finite(b, op);
  Tensor out = Tensor::zeros_like(a);
  auto x = a.data();
  auto y = b.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < x.size(); ++i) dst[i] = f(x[i], y[i]);
  return out;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(element_count(shape_), fill) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (element_count(shape_) != data_.size()) {
    throw ShapeMismatch("shape " + shape_string(shape_) + " needs " +
                        std::to_string(element_count(shape_)) +
                        " elements, got " + std::to_string(data_.size()));
  }
}

Tensor Tensor::scalar(double value) { return Tensor({1}, {value}); }

Tensor Tensor::vector(std::initializer_list<double> values) {
  return vector(std::vector<double>(values));
}

Tensor Tensor::vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols,
                      std::vector<double> values) {
  return Tensor({rows, cols}, std::move(values));
}

Tensor Tensor::zeros_like(const Tensor& other) {
  return Tensor(other.shape_, 0.0);
}

double Tensor::at(std::size_t row, std::size_t col) const {
  return data_[row * cols() + col];
}

double& Tensor::at(std::size_t row, std::size_t col) {
  return data_[row * cols() + col];
}

std::size_t Tensor::rows() const {
  if (rank() != 2) throw ShapeMismatch("rows() on non-matrix tensor");
  return shape_[0];
}

std::size_t Tensor::cols() const {
  if (rank() != 2) throw ShapeMismatch("cols() on non-matrix tensor");
  return shape_[1];
}

bool Tensor::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double x) { return std::isfinite(x); });
}

Tensor Tensor::reshaped(std::vector<std::size_t> shape) const {
  return Tensor(std::move(shape), data_);
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ',';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor add(const Tensor& a, const Tensor& b) {
  return map_binary(a, b, "add", std::plus<>{});
}

Tensor sub(const Tensor& a, const Tensor& b) {
  return map_binary(a, b, "sub", std::minus<>{});
}

Tensor mul(const Tensor& a, const Tensor& b) {
  return map_binary(a, b, "mul", std::multiplies<>{});
}

Tensor div(const Tensor& a, const Tensor& b, double guard) {
  return map_binary(a, b, "div", [guard](double x, double y) {
    const double d = y + guard;
    if (d == 0.0) throw DomainError("div: zero divisor");
    return x / d;
  });
}

Tensor scale(const Tensor& a, double s) {
  if (!std::isfinite(s)) throw NonFiniteInput("scale: non-finite factor");
  return map_unary(a, "scale", [s](double x) { return s * x; });
}

Tensor square(const Tensor& a) {
  return map_unary(a, "square", [](double x) { return x * x; });
}

Tensor sqrt(const Tensor& a) {
  return map_unary(a, "sqrt", [](double x) {
    if (x < 0.0) throw DomainError("sqrt: negative element");
    return std::sqrt(x);
  });
}

Tensor abs(const Tensor& a) {
  return map_unary(a, "abs", [](double x) { return std::fabs(x); });
}

Tensor sign(const Tensor& a) {
  return map_unary(a, "sign", [](double x) {
    return static_cast<double>((x > 0.0) - (x < 0.0));
  });
}

Tensor axpy(double alpha, const Tensor& a, const Tensor& b) {
  if (!std::isfinite(alpha)) throw NonFiniteInput("axpy: non-finite alpha");
  return map_binary(a, b, "axpy",
                    [alpha](double x, double y) { return alpha * x + y; });
}

double sum(const Tensor& a) {
  double s = 0.0;
  for (double x : a.data()) s += x;
  return s;
}

double mean(const Tensor& a) { return sum(a) / static_cast<double>(a.size()); }

double max_abs(const Tensor& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::fabs(x));
  return m;
}

double dot(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "dot");
  double s = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace adamnx
