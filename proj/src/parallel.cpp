#include "msd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace msd {

namespace {
std::atomic<int> g_threads{0};
thread_local bool t_inside = false;
}  // namespace

void set_thread_count(int threads) { g_threads = std::max(0, threads); }

int thread_count() {
    const int t = g_threads.load();
    if (t > 0) return t;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(thread_count()));
    // nested calls run inline
    if (workers <= 1 || t_inside) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto run = [&] {
        t_inside = true;
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= count) break;
            try {
                body(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next = count;
            }
        }
        t_inside = false;
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace msd
