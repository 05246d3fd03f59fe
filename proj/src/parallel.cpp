#include "liou/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace liou {

void parallel_blocks(std::uint64_t n, std::uint64_t block_size, unsigned threads,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (n == 0) return;
    const std::size_t blocks = block_count(n, block_size);
    auto run_block = [&](std::size_t b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * block_size;
        const std::uint64_t hi = std::min(n, lo + block_size);
        fn(b, lo, hi);
    };

    if (threads <= 1 || blocks <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks) return;
            try {
                run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const unsigned nworkers = static_cast<unsigned>(
        std::min<std::size_t>(threads, blocks));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace liou
