// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <cstddef>
#include <functional>

namespace adamnx {

/// Worker count from ADAMNX_THREADS, else hardware concurrency (at least 1).
std::size_t default_worker_count();

/// Runs body(i) for every i in [0, n) over up to `workers` threads using
/// contiguous static chunks. The first exception thrown by any worker is
/// rethrown on the calling thread once all workers have joined.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace adamnx
