#include "qghs/parallel.hpp"

#include "qghs/errors.hpp"

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace qghs {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) {
    require(n >= 1, "thread count must be at least 1");
    g_threads.store(n, std::memory_order_relaxed);
}

unsigned thread_count() { return g_threads.load(std::memory_order_relaxed); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    unsigned nt = thread_count();
    if (nt <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (static_cast<std::size_t>(nt) > count) nt = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    for (unsigned w = 0; w < nt; ++w) {
        pool.emplace_back([&, w] {
            // Contiguous slabs, not striding, so cache lines stay private.
            std::size_t lo = count * w / nt;
            std::size_t hi = count * (w + 1) / nt;
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!failed.exchange(true)) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(first_error);
}

} // namespace qghs
