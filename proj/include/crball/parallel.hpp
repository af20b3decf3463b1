#pragma once

// Index-ordered fan-out. Results land in slot i regardless of which worker
// finished first, so reports assembled from them are deterministic.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace crball {

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs f(i) for i in [0, count) and returns the results in index order. The
/// first exception thrown by any call is rethrown after all workers stop.
template <class F>
auto parallel_map(std::size_t count, F&& f, unsigned workers = default_workers()) {
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto work = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || stop.load()) return;
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                stop = true;
            }
        }
    };
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < workers; ++k) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

} // namespace crball
