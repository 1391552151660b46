// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adamnx {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised by optimizer steps. Carries the 1-based step at which the bad
/// gradient was seen so that runners can report where a run diverged.
class NonFiniteGradient : public Error {
 public:
  NonFiniteGradient(std::uint64_t step, const std::string& what)
      : Error(what), step_(step) {}
  std::uint64_t step() const noexcept { return step_; }

 private:
  std::uint64_t step_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Collects every violated invariant rather than stopping at the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "validation failed:";
  for (const auto& issue : issues) {
    out += "\n  - ";
    out += issue;
  }
  return out;
}

inline ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

}  // namespace adamnx
