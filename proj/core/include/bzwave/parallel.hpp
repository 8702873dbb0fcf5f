#pragma once

#include <cstddef>
#include <functional>

namespace bzwave {

/// Worker cap: BZWAVE_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(begin, end) over contiguous chunks of [0, n) on up to
/// thread_count() threads; returns after all chunks finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

/// Runs a and b, concurrently when more than one worker is allowed.
void parallel_invoke(const std::function<void()>& a, const std::function<void()>& b);

}  // namespace bzwave
