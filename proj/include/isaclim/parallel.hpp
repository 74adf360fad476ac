#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace isaclim {

/// Index-parallel loop. Work items must be independent; each index writes its
/// own output slot, so scheduling never affects results. `threads <= 0` uses
/// the hardware concurrency.
inline void parallel_for(int n, int threads, const std::function<void(int)>& body) {
    if (n <= 0) return;
    int degree = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (degree < 1) degree = 1;
    degree = std::min(degree, n);
    if (degree == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        try {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(degree));
    for (int t = 0; t < degree; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace isaclim
