#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace dti {

// Static block partition over [0,n). Results must be written to disjoint,
// preallocated slots so the outcome is independent of the worker count. The
// first exception thrown by any worker is rethrown on the caller.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& body) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::size_t w = std::min<std::size_t>(workers, n);
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < w; ++t) {
        pool.emplace_back([&, t] {
            std::size_t lo = n * t / w, hi = n * (t + 1) / w;
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace dti
