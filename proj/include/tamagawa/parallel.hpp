// SPDX-License-Identifier: MIT
/**
 * @file parallel.hpp
 * @brief Fixed-block parallel loops; the worker count comes from TAMAGAWA_THREADS.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace tamagawa {

/// TAMAGAWA_THREADS if set and positive, else the hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads.  Indices are handed out in
/// increasing order; the first exception thrown is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tamagawa
