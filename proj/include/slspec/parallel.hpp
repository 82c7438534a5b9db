#pragma once

#include <cstddef>
#include <functional>

namespace slspec {

/// Worker cap: SLSPEC_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count() noexcept;

/// Runs body(i) for i in [0, count) on up to worker_count() threads.
/// Iterations must be independent. If any iteration throws, the exception
/// from the lowest failing index is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace slspec
