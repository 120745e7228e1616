#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "grauert/geometries.hpp"
#include "grauert/qfunction.hpp"

namespace grauert::weyl {

using geom::Eigendata;
using geom::TubePoint;

// sum_{lambda_j <= lambda} e^{-2 tau lambda_j} |phi_j(zeta)|^2, accumulated in
// the fixed (lambda, index) order with compensated summation. Grid
// evaluations are snapshots of the same fold, so differences of values at two
// cuts reproduce single-call results bitwise.
double tempered_sum(const Eigendata& data, const TubePoint& zeta, double tau, double lambda);
std::vector<double> tempered_sum_grid(const Eigendata& data, const TubePoint& zeta, double tau,
                                      const std::vector<double>& grid);

// Half the minimum gap between distinct eigenvalues of the loaded data.
double spectral_gap_delta(const Eigendata& data);

// Two-sided difference of tempered_sum across an eigenvalue, identical
// floating-point path on both sides.
double jump_at(const Eigendata& data, const TubePoint& zeta, double tau, double lambda_j);

struct TemperedSumSeries {
    geom::Geometry geometry;
    TubePoint zeta;
    double tau;
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<std::pair<double, double>> jump_records; // (lambda_j, jump)
};
TemperedSumSeries make_series(const Eigendata& data, const TubePoint& zeta, double tau,
                              const std::vector<double>& grid, bool record_jumps = false);

struct QuadratureSpec {
    int nodes = 0; // 0 = resolution chosen from the mode
};

// ||phi^C||^2 over the tube boundary with the fiber measure tau^{m-1} d(angle)
// and unit-mass base average. Torus m = 2 reduces exactly to 2 pi tau
// I0(2|k|tau) (series oracle available separately); the sphere uses a product
// quadrature reduced by azimuthal symmetry; the circle fiber is two points.
double l2_norm_boundary(const Eigendata& data, std::size_t entry, double tau,
                        QuadratureSpec quad = {});

// Closed Bessel form of the torus m = 2 norm; the quadrature's oracle.
double torus_l2_bessel(double k_norm, double tau);

// Husimi density |phi^C(zeta)|^2 / ||phi^C||^2.
double husimi(const Eigendata& data, std::size_t entry, double tau, const TubePoint& zeta);

struct SupResult {
    double value;
    TubePoint argmax;
};

// Grid-refined sup of the square-rooted Husimi density |phi^C|/||phi^C||;
// the grid step near maxima is at most 0.2 lambda^{-1/2}.
SupResult husimi_sup(const Eigendata& data, std::size_t entry, double tau);

// chi(x) = c_p (sin(ax)/(ax))^{2p}, a = support_radius/(2p): nonnegative with
// isolated zeros, transform supported in [-support_radius, support_radius].
struct SmoothingKernel {
    int p = 0;
    double support_radius = 0.0;
    double a = 0.0;
    double c = 0.0;

    double operator()(double x) const;
    double hat(double t) const; // closed-form B-spline transform, hat(0) = 1
    double effective_width(double rel_threshold = 1e-14) const;
};
SmoothingKernel build_smoothing_kernel(int p, double support_radius);

// Spectral-side convolution sum chi(lambda_j - lambda) e^{-2 tau lambda_j}
// |phi_j(zeta)|^2; eigendata must reach lambda + effective kernel width.
double smoothed_density(const Eigendata& data, const TubePoint& zeta, double tau,
                        const SmoothingKernel& kernel, double lambda);

// Windowed period extraction: gamma(x) = e^{i n T x} chi_w(x) with the window
// transform supported strictly inside (nT - T/2, nT + T/2) and away from 0.
// Returns the phase-corrected estimate of G_n; divide by the calibration
// constant (fitted once on a reference geometry) and lambda^{(m-1)/2}.
std::complex<double> period_coefficient_extract(const Eigendata& data, const TubePoint& zeta,
                                                double tau, int n, double lambda, double period,
                                                const SmoothingKernel& window,
                                                double calibration);

// Calibration constant: the raw extraction magnitude at (n, lambda_calib),
// normalized by lambda^{(m-1)/2}, on data whose coefficient is 1.
double calibrate_extraction(const Eigendata& data, const TubePoint& zeta, double tau,
                            double period, const SmoothingKernel& window, double lambda_calib,
                            int n = 1);

struct FitResult {
    double exponent = 0.0;
    double amplitude = 0.0;
    double residual = 0.0; // held-out relative deviation, or sup |r| lambda
    double window_lo = 0.0;
    double window_hi = 0.0;
};

// Least-squares power law through (log x, log y); every fourth point is held
// out and the residual reports the worst held-out relative deviation.
FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

// r(lambda) = P/(c lambda^{(m+1)/2}) - 1 - Q(lambda)/lambda with c fitted on
// the upper half of the grid; residual = sup |r(lambda)| lambda. The second
// form takes the oscillating term directly (flat-torus series).
FitResult two_term_residual(const Eigendata& data, const TubePoint& zeta, double tau,
                            const qfunction::QFunctionSpec& qspec,
                            const std::vector<double>& grid);
FitResult two_term_residual(const Eigendata& data, const TubePoint& zeta, double tau,
                            const std::function<double(double)>& q_of_lambda,
                            const std::vector<double>& grid);

// Tempered mass of the N-th sphere cluster.
double zoll_cluster_sum(const Eigendata& clusters, const TubePoint& zeta, double tau, int n);

} // namespace grauert::weyl
