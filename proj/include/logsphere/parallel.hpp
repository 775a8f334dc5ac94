#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace logsphere {

/// Worker-thread cap: LOGSPHERE_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1). Read at call time so
/// callers can vary it per invocation.
inline unsigned worker_thread_count() {
    if (const char* env = std::getenv("LOGSPHERE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Run body(i) for i in [0, count) on up to worker_thread_count() threads.
/// Work items are claimed from an atomic counter; the body must write its
/// result into a preallocated slot (results must not depend on scheduling).
/// The first exception in index order is rethrown after all threads join.
template <class Body>
void parallel_for_index(std::size_t count, Body&& body) {
    if (count == 0) return;
    const unsigned threads = std::min<std::size_t>(worker_thread_count(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
    }
}

} // namespace logsphere
