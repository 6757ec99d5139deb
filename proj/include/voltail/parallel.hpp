// Index-parallel loop over independent work items.  Results must be written
// by index so the outcome does not depend on scheduling.

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace voltail {

inline void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn) {
    if (n == 0)
        return;
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = n_threads > 0 ? static_cast<std::size_t>(n_threads)
                                        : (hw > 0 ? hw : 1);
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers)
                    fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace voltail
