#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace heckegrid {

/// Worker count: hardware concurrency, capped by HECKEGRID_THREADS when it holds a
/// positive integer.
inline unsigned worker_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HECKEGRID_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Runs job(i) for i in [0, count) and returns the results in index order, so the output
/// does not depend on scheduling. The first exception (by index) is rethrown after all
/// workers finish.
template <class R>
std::vector<R> parallel_map(std::size_t count, const std::function<R(std::size_t)>& job)
{
    std::vector<R> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

} // namespace heckegrid
