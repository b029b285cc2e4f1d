#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace projconst {

// Worker count for embarrassingly parallel batches. PROJCONST_THREADS caps
// the pool; unset or <= 1 means serial.
inline int worker_count(int jobs) {
    const char* env = std::getenv("PROJCONST_THREADS");
    int cap = 1;
    if (env) {
        cap = std::atoi(env);
        if (cap < 1) cap = 1;
    }
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    return std::min({cap, hw, jobs});
}

// Runs fn(0..count-1). Each job writes only its own slot, so results are
// identical for any schedule; callers merge in index order.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    if (count <= 0) return;
    int workers = worker_count(count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace projconst
