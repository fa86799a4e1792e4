// parallel.hpp: order-preserving parallel map over an index range

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace dephaser {

// Worker count: explicit value if > 0, else DEPHASER_JOBS, else hardware concurrency.
inline std::size_t resolve_jobs(std::size_t requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DEPHASER_JOBS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// out[i] = fn(i) for i in [0, n). Results land in index order regardless of
// which worker finishes first; the lowest-index exception is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, std::size_t jobs, Fn&& fn) {
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) pool.emplace_back(worker);
    pool.clear(); // joins
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace dephaser
