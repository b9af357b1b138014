#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace sglab {

// Process-wide worker cap for data-parallel loops. Set from --threads or the
// SEMIGROUP_LAB_THREADS environment variable; 0 means "decide from hardware".
void set_thread_count(std::size_t n);
std::size_t thread_count();

// Runs fn(chunk_begin, chunk_end) over [0, n) split into a fixed number of
// chunks that does not depend on the worker count, so chunked reductions are
// reproducible regardless of parallelism.
template <class Fn>
void parallel_chunks(std::size_t n, Fn&& fn, std::size_t chunks = 64) {
    if (n == 0) return;
    chunks = std::min(chunks, n);
    const std::size_t workers = std::min(thread_count(), chunks);
    auto run_range = [&](std::size_t first_chunk, std::size_t last_chunk) {
        for (std::size_t c = first_chunk; c < last_chunk; ++c) {
            const std::size_t lo = n * c / chunks;
            const std::size_t hi = n * (c + 1) / chunks;
            fn(c, lo, hi);
        }
    };
    if (workers <= 1) {
        run_range(0, chunks);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t first = chunks * w / workers;
        const std::size_t last = chunks * (w + 1) / workers;
        pool.emplace_back(run_range, first, last);
    }
    for (auto& th : pool) th.join();
}

} // namespace sglab
