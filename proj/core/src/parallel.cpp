#include "keps/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace keps {

namespace {

std::atomic<int> g_threads{1};

constexpr std::size_t kBlock = 1024;        // reduction block size, never changes
constexpr std::size_t kParallelGrain = 16384; // below this, threading never pays

} // namespace

void set_threads(int n) { g_threads.store(n < 1 ? 1 : n); }

int threads() { return g_threads.load(); }

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& f) {
    const int nt = threads();
    if (nt <= 1 || n < kParallelGrain) {
        f(0, n);
        return;
    }
    const std::size_t chunks = static_cast<std::size_t>(nt);
    const std::size_t per = (n + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t b = c * per;
        if (b >= n) break;
        const std::size_t e = std::min(n, b + per);
        pool.emplace_back([&f, b, e] { f(b, e); });
    }
    for (auto& t : pool) t.join();
}

namespace {

// Each block partial is a sequential sum of exactly the same elements in the
// same order regardless of thread count; the block partials are then folded
// sequentially in block order.
template <class BlockOp>
double blocked_reduce(std::size_t n, BlockOp block_sum) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
    parallel_chunks(nblocks, [&](std::size_t b0, std::size_t b1) {
        for (std::size_t b = b0; b < b1; ++b) {
            const std::size_t i0 = b * kBlock;
            const std::size_t i1 = std::min(n, i0 + kBlock);
            partial[b] = block_sum(i0, i1);
        }
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

} // namespace

double blocked_sum(std::span<const double> x) {
    return blocked_reduce(x.size(), [&](std::size_t i0, std::size_t i1) {
        double s = 0.0;
        for (std::size_t i = i0; i < i1; ++i) s += x[i];
        return s;
    });
}

double blocked_dot(std::span<const double> a, std::span<const double> b) {
    return blocked_reduce(a.size(), [&](std::size_t i0, std::size_t i1) {
        double s = 0.0;
        for (std::size_t i = i0; i < i1; ++i) s += a[i] * b[i];
        return s;
    });
}

} // namespace keps
