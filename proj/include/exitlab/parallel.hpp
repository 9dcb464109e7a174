#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace exitlab {

/// Worker-thread cap: EXITLAB_THREADS if set, hardware concurrency otherwise.
inline unsigned thread_cap() {
    if (const char* env = std::getenv("EXITLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Runs fn(i) for i in [0, count) on up to thread_cap() threads. Work items
/// must be independent; determinism comes from writing results into
/// index-addressed slots, never from scheduling order.
template <class F>
void parallel_replicates(std::size_t count, F&& fn) {
    const unsigned threads = std::min<std::size_t>(thread_cap(), count ? count : 1);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load(std::memory_order_relaxed)) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mutex);
                    if (!failed.exchange(true)) error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed && error) std::rethrow_exception(error);
}

}  // namespace exitlab
