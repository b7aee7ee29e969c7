#ifndef AGR_PARALLEL_HPP
#define AGR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace agr {

// Thread-count control for the parallel helpers. 0 means hardware
// concurrency. The CLI owns this setting; library code only reads it.
void set_max_threads(int n);
int max_threads();

// Runs body(i) for i in [0, count). Work is keyed by index, so results that
// are written to per-index slots are identical for any thread count. Nested
// calls run the inner loop serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Deterministic parallel map-reduce: evaluates term(i) into an indexed
// buffer and pairwise-sums it, so the result is bitwise independent of the
// thread count.
double parallel_sum(std::size_t count, const std::function<double(std::size_t)>& term);

} // namespace agr

#endif
