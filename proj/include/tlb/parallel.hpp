#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tlb {

inline int default_jobs() {
    if (const char* env = std::getenv("TLLOOP_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1)
            return j;
    }
    return 1;
}

// Runs f(i) for i in [0, count) on `jobs` threads, pulling indices from a
// shared counter. Callers collect results by index, so output order does not
// depend on the schedule.
template <class F>
void parallel_for(size_t count, int jobs, F&& f) {
    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i)
            f(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    int nt = std::min<size_t>(size_t(jobs), count);
    pool.reserve(size_t(nt));
    for (int t = 0; t < nt; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
}

} // namespace tlb
