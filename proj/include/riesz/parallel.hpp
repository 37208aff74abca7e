#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace riesz::detail {

inline unsigned worker_count(std::size_t jobs)
{
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(hw, jobs));
}

// Runs body(i) for i in [0, jobs).  Results must be written to slots indexed
// by i so that the outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t jobs, Body&& body)
{
    if (jobs == 0)
        return;
    const unsigned workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(jobs);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(run);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

// Private generator for one batch of a seeded stream.
inline std::mt19937_64 batch_engine(std::uint64_t seed, std::uint64_t batch, std::uint64_t salt = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32),
                      static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
}

} // namespace riesz::detail
