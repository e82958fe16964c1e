#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dimflow {

// DIMFLOW_THREADS overrides the hardware default; 1 disables threading.
inline unsigned thread_count() {
    if (const char* env = std::getenv("DIMFLOW_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs f(i) for i in [0, n). Each index writes only its own slot, so results
// are independent of scheduling; the first exception is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    unsigned threads = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += threads) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace dimflow
