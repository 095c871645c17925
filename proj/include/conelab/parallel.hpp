#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace conelab {

/// Worker cap: hardware concurrency, clamped by the CONELAB_THREADS env var.
inline unsigned thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CONELAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    }
    return hw;
}

/// Evaluate chunk_fn(0..chunks-1) on a worker pool and merge the results in
/// chunk order. The merge order makes the result independent of worker count
/// and scheduling; chunk_fn must be pure.
template <typename Result, typename ChunkFn, typename MergeFn>
Result chunked_reduce(long chunks, Result init, ChunkFn chunk_fn, MergeFn merge) {
    if (chunks <= 0) return init;
    std::vector<std::optional<Result>> results(static_cast<std::size_t>(chunks));
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&]() {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= chunks || failed.load()) return;
            try {
                results[static_cast<std::size_t>(i)] = chunk_fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    const unsigned workers = std::min<unsigned>(thread_cap(), static_cast<unsigned>(chunks));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) std::rethrow_exception(error);

    Result acc = std::move(init);
    for (long i = 0; i < chunks; ++i)
        merge(acc, std::move(*results[static_cast<std::size_t>(i)]));
    return acc;
}

}  // namespace conelab
