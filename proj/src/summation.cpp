#include "grauert/summation.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace grauert {

int worker_count() {
    if (const char* env = std::getenv("GW_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

void parallel_for_blocks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn,
                         std::size_t block) {
    if (n == 0) return;
    const std::size_t nblocks = (n + block - 1) / block;
    const int workers = std::min<int>(worker_count(), static_cast<int>(nblocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b)
            fn(b * block, std::min(n, (b + 1) * block));
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t b = static_cast<std::size_t>(w); b < nblocks;
                 b += static_cast<std::size_t>(workers))
                fn(b * block, std::min(n, (b + 1) * block));
        });
    }
    for (auto& t : pool) t.join();
}

namespace {

double pairwise_combine(std::vector<double>& parts) {
    // Fixed tree: repeatedly add adjacent pairs. Shape depends only on size.
    std::size_t n = parts.size();
    while (n > 1) {
        std::size_t half = 0;
        for (std::size_t i = 0; i + 1 < n; i += 2) parts[half++] = parts[i] + parts[i + 1];
        if (n % 2 == 1) parts[half++] = parts[n - 1];
        n = half;
    }
    return n == 1 ? parts[0] : 0.0;
}

} // namespace

double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& f,
                         std::size_t block) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + block - 1) / block;
    std::vector<double> parts(nblocks, 0.0);
    parallel_for_blocks(
        n,
        [&](std::size_t lo, std::size_t hi) {
            NeumaierSum acc;
            for (std::size_t i = lo; i < hi; ++i) acc.add(f(i));
            parts[lo / block] = acc.value();
        },
        block);
    return pairwise_combine(parts);
}

double deterministic_sum(std::span<const double> xs, std::size_t block) {
    return deterministic_sum(xs.size(), [&](std::size_t i) { return xs[i]; }, block);
}

} // namespace grauert
