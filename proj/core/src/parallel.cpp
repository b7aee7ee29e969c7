#include "agr/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "agr/numerics.hpp"

namespace agr {

namespace {
std::atomic<int> g_max_threads{0};
thread_local bool tl_in_parallel = false;
} // namespace

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
    int n = g_max_threads.load();
    if (n == 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return n > 0 ? n : 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    const int threads = tl_in_parallel ? 1 : max_threads();
    if (threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mtx;
    std::exception_ptr err;
    auto worker = [&]() {
        tl_in_parallel = true;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!err) err = std::current_exception();
            }
        }
        tl_in_parallel = false;
    };
    std::vector<std::thread> pool;
    const std::size_t n_workers = std::min<std::size_t>(threads, count) - 1;
    pool.reserve(n_workers);
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

double parallel_sum(std::size_t count, const std::function<double(std::size_t)>& term) {
    std::vector<double> buf(count);
    parallel_for(count, [&](std::size_t i) { buf[i] = term(i); });
    return pairwise_sum(buf);
}

} // namespace agr
