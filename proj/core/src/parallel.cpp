#include "bzwave/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bzwave {

unsigned thread_count() {
    if (const char* env = std::getenv("BZWAVE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk) {
    const std::size_t workers =
        std::min<std::size_t>(thread_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back(body, b, e);
    }
    body(0, std::min(n, chunk));
    for (auto& t : pool) t.join();
}

void parallel_invoke(const std::function<void()>& a, const std::function<void()>& b) {
    if (thread_count() <= 1) {
        a();
        b();
        return;
    }
    std::thread t(a);
    b();
    t.join();
}

}  // namespace bzwave
