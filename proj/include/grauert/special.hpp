#pragma once

#include <complex>

namespace grauert::special {

// Modified Bessel I0 by its (all-positive) power series; relative accuracy a
// few ulps over the double range that matters here (x up to ~600).
double bessel_i0(double x);

// Legendre P_n by upward recurrence; stable off the cut and for |x| >= 1
// where P_n is the dominant solution.
double legendre_p(int n, double x);
std::complex<double> legendre_p(int n, std::complex<double> z);

// Laplace integral representation P_n(z) = (1/2pi) int (z + i sqrt(1-z^2) cos t)^n dt
// by the trapezoid rule; exact once nodes > n. Branch of the root is
// irrelevant (the integral is even under its sign flip).
std::complex<double> legendre_p_quadrature(int n, std::complex<double> z, int nodes);

// log Gamma(a)/Gamma(b)
double lgamma_ratio(double a, double b);

} // namespace grauert::special
