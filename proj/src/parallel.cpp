#include "pnfield/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pnfield {

unsigned default_worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PNFIELD_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return n;
}

unsigned effective_workers(std::size_t count, unsigned workers) {
    if (workers == 0) workers = default_worker_count();
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, count)));
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(unsigned, std::size_t)>& body) {
    const unsigned n = effective_workers(count, workers);
    if (n == 1) {
        for (std::size_t i = 0; i < count; ++i) body(0, i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto run = [&](unsigned worker) {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(worker, i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(n - 1);
    for (unsigned w = 1; w < n; ++w) threads.emplace_back(run, w);
    run(0);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace pnfield
