#include "upcap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace upcap {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void for_each_chunk(std::int64_t total, std::int64_t chunk_size, int workers,
                    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
    if (total <= 0) return;
    chunk_size = std::max<std::int64_t>(1, chunk_size);
    const std::int64_t chunks = (total + chunk_size - 1) / chunk_size;
    workers = static_cast<int>(std::min<std::int64_t>(resolve_workers(workers), chunks));

    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::int64_t begin = c * chunk_size;
            const std::int64_t end = std::min(total, begin + chunk_size);
            try {
                fn(c, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace upcap
