#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace keps {

// Thread count is a process-wide speed knob. Results are bit-identical for
// every value: reductions always accumulate fixed-size block partials in
// block order, independent of how blocks are distributed over threads.

void set_threads(int n);
int threads();

/// Runs f(begin, end) over contiguous chunks covering [0, n).
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& f);

double blocked_sum(std::span<const double> x);
double blocked_dot(std::span<const double> a, std::span<const double> b);

} // namespace keps
