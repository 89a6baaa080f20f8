#pragma once

#include <cstddef>
#include <functional>

namespace maxtrunc {

/// Runs body(i) for every i in [0, count).
///
/// Work is split into contiguous blocks over at most `threads` workers.
/// With threads <= 1 the loop runs inline in ascending order. If any call
/// throws, the exception from the lowest failing index is rethrown after all
/// workers finish. Callers keep results deterministic by writing to slot i.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

/// Number of hardware threads, at least 1.
std::size_t hardware_threads() noexcept;

}  // namespace maxtrunc
