#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace platoon_lab {

/// Worker cap from PLATOON_LAB_THREADS (unset or 0 = hardware concurrency).
unsigned worker_count();

/// Runs body(i) for i in [0, count) over contiguous chunks. Results must be
/// written to per-index slots so the outcome does not depend on scheduling.
/// If several indices throw, the exception of the lowest index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    body(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (std::size_t w = 0; w < workers; ++w)
        if (errors[w]) std::rethrow_exception(errors[w]);
}

}  // namespace platoon_lab
