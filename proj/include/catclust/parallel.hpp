#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace catclust {

namespace detail {
inline std::atomic<unsigned>& threadCountSlot() {
    static std::atomic<unsigned> count{1};
    return count;
}
}  // namespace detail

/// Number of worker threads used by parallelFor. 0 selects hardware concurrency.
inline void setThreadCount(unsigned n) {
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    detail::threadCountSlot().store(n);
}

inline unsigned threadCount() { return detail::threadCountSlot().load(); }

/// Runs body(i) for i in [0, n). Work is split into contiguous static chunks, so
/// callers that write into per-index slots and reduce them afterwards in index
/// order get results that do not depend on the thread count.
template <class Body>
void parallelFor(std::size_t n, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(threadCount(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failureMutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failureMutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace catclust
