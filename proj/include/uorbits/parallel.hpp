#pragma once

#include <thread>
#include <vector>

namespace uorbits {

/// run fn(i) for i in [0, n) on `workers` threads, results slotted by index;
/// output is independent of the worker count because all arithmetic is exact
/// and every task writes only its own slot
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, int workers, Fn fn) {
    std::vector<T> out(n);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + static_cast<std::size_t>(workers) - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

} // namespace uorbits
