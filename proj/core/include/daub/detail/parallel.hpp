#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace daub::detail {

inline unsigned resolve_threads(unsigned requested) noexcept {
    if (requested != 0) {
        return requested;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Calls body(begin, end) on contiguous chunks of [0, n). Small ranges and
// single-thread configurations run inline. The first exception is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body, std::size_t min_chunk = 4096) {
    const unsigned t = resolve_threads(threads);
    const std::size_t chunks = std::min<std::size_t>(t, (n + min_chunk - 1) / std::max<std::size_t>(min_chunk, 1));
    if (chunks <= 1) {
        if (n > 0) {
            body(std::size_t{0}, n);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex mutex;
    std::vector<std::thread> pool;
    pool.reserve(chunks - 1);
    const std::size_t step = (n + chunks - 1) / chunks;
    auto run = [&](std::size_t begin, std::size_t end) {
        try {
            body(begin, end);
        } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    };
    for (std::size_t c = 1; c < chunks; ++c) {
        std::size_t begin = c * step;
        std::size_t end = std::min(n, begin + step);
        if (begin < end) {
            pool.emplace_back(run, begin, end);
        }
    }
    run(0, std::min(n, step));
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace daub::detail
