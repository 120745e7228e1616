#include "grauert/special.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>
#include <vector>

#include "grauert/errors.hpp"

namespace grauert::special {

double bessel_i0(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, acc = 1.0;
    for (int m = 1; m < 4000; ++m) {
        term *= q / (double(m) * double(m));
        acc += term;
        if (term < acc * 1e-17) return acc;
    }
    throw NumericError("bessel_i0: series did not terminate");
}

double legendre_p(int n, double x) {
    if (n == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 2; k <= n; ++k) {
        const double next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * pm1) / double(k);
        pm1 = p;
        p = next;
    }
    return p;
}

std::complex<double> legendre_p(int n, std::complex<double> z) {
    if (n == 0) return 1.0;
    std::complex<double> pm1 = 1.0, p = z;
    for (int k = 2; k <= n; ++k) {
        const std::complex<double> next = ((2.0 * k - 1.0) * z * p - (k - 1.0) * pm1) / double(k);
        pm1 = p;
        p = next;
    }
    return p;
}

namespace {

// cos table per node count; quadrature rules are reused many times per call
// site, so the table is cached.
const std::vector<double>& cos_table(int nodes) {
    thread_local std::unordered_map<int, std::vector<double>> cache;
    auto it = cache.find(nodes);
    if (it != cache.end()) return it->second;
    std::vector<double> t(nodes);
    for (int k = 0; k < nodes; ++k) t[k] = std::cos(2.0 * std::numbers::pi * k / nodes);
    return cache.emplace(nodes, std::move(t)).first->second;
}

std::complex<double> ipow(std::complex<double> base, unsigned n) {
    std::complex<double> acc = 1.0;
    while (n) {
        if (n & 1u) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

} // namespace

std::complex<double> legendre_p_quadrature(int n, std::complex<double> z, int nodes) {
    if (nodes <= n)
        throw AccuracyError("legendre_p_quadrature: node count below the polynomial degree");
    const std::complex<double> iroot = std::complex<double>(0.0, 1.0) * std::sqrt(1.0 - z * z);
    const std::vector<double>& ct = cos_table(nodes);
    std::complex<double> acc = 0.0;
    for (int k = 0; k < nodes; ++k) acc += ipow(z + iroot * ct[k], static_cast<unsigned>(n));
    return acc / double(nodes);
}

double lgamma_ratio(double a, double b) { return std::lgamma(a) - std::lgamma(b); }

} // namespace grauert::special
