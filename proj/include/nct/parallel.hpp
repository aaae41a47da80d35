#pragma once

// Deterministic worker pool helper. Work is split into chunks whose boundaries
// depend only on the job size, never on the thread count; callers write chunk
// results into preallocated slots and combine them in chunk order, so output
// is bit-identical for 1, 2 or N threads.

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace nct {

inline int& worker_threads() {
    static int n = 1;
    return n;
}

// Runs chunk(ci) for ci in [0, nchunks). chunk must only touch its own slot.
template <typename F>
void run_chunks(std::size_t nchunks, F&& chunk) {
    const int nthreads = worker_threads();
    if (nthreads <= 1 || nchunks <= 1) {
        for (std::size_t ci = 0; ci < nchunks; ++ci) chunk(ci);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t ci = cursor.fetch_add(1);
            if (ci >= nchunks) return;
            chunk(ci);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t nspawn =
        std::min<std::size_t>(static_cast<std::size_t>(nthreads), nchunks);
    pool.reserve(nspawn);
    for (std::size_t i = 0; i < nspawn; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace nct
