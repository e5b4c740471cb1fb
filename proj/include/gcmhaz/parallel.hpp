#pragma once

#include <cstdint>
#include <functional>

namespace gcmhaz {

// Worker cap for replicated simulations.  Work units are keyed by their
// index (which selects the RNG stream) and write to disjoint slots, so the
// result is identical for any worker count.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs body(i) for i in [0, count), possibly concurrently.
void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& body);

}  // namespace gcmhaz
