#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace grauert {

// Neumaier variant of compensated summation. value() must be called once at
// the end; the running (sum, carry) state is the deterministic fold state
// used for prefix snapshots.
struct NeumaierSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + carry; }
};

// Number of workers: GW_WORKERS env var, else hardware concurrency.
int worker_count();

// Runs fn(begin, end) over a fixed-shape block partition of [0, n).
// The block shape depends only on n, never on the worker count, so
// per-block results are identical for any number of workers.
void parallel_for_blocks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn,
                         std::size_t block = 4096);

// Deterministic sum: Neumaier partials over fixed-shape blocks, combined by a
// fixed pairwise tree. Bit-reproducible for a given input regardless of the
// worker count.
double deterministic_sum(std::span<const double> xs, std::size_t block = 4096);

// Same reduction over f(i) without materializing the array.
double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& f,
                         std::size_t block = 4096);

} // namespace grauert
