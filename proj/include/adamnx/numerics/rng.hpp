// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "adamnx/numerics/tensor.hpp"

namespace adamnx {

/// Seeded pseudo-random stream.
///
/// Algorithm: the 64-bit seed is expanded with SplitMix64 into the 256-bit
/// state of xoshiro256** (Blackman & Vigna). Uniform doubles take the top 53
/// bits of each output. Normal deviates use the Box-Muller transform and
/// cache the second deviate of each pair. The integer stream is identical on
/// every platform; normal deviates additionally depend on the platform's
/// log/sin/cos.
///
/// An Rng is owned by one thread. Parallel work calls derive() to obtain
/// independent child streams that depend only on (seed, stream id).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1).
  double uniform() noexcept;
  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) noexcept;
  double normal() noexcept;
  double normal(double mean, double sigma) noexcept {
    return mean + sigma * normal();
  }

  /// Child stream for the given id. Does not advance this stream.
  Rng derive(std::uint64_t stream_id) const noexcept;

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> state_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// SplitMix64 finalizer; exposed for seed derivation.
std::uint64_t splitmix64(std::uint64_t& x) noexcept;

/// Tensor of i.i.d. N(mean, sigma^2) draws. sigma must be non-negative.
Tensor gaussian_sample(Rng& rng, std::vector<std::size_t> shape, double mean,
                       double sigma);

}  // namespace adamnx
