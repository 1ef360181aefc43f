#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace brc {

// Worker count: BRC_THREADS env var, else hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("BRC_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n). Each index is independent; results must be
// written to slot i of a pre-sized buffer so the merge order is fixed by
// index and the outcome does not depend on the worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace brc
