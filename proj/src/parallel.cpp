#include "charsum/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace charsum {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHARSUM_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(std::size_t n, std::size_t chunk_size, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    threads = resolve_thread_count(threads);
    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::size_t begin = c * chunk_size;
            fn(c, begin, std::min(begin + chunk_size, n));
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) break;
            std::size_t begin = c * chunk_size;
            fn(c, begin, std::min(begin + chunk_size, n));
        }
    };
    std::vector<std::thread> pool;
    const std::size_t spawn = std::min<std::size_t>(threads, n_chunks);
    pool.reserve(spawn);
    for (std::size_t i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

}  // namespace charsum
