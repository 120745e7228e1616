#include "grauert/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "grauert/special.hpp"
#include "grauert/summation.hpp"

namespace grauert::weyl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using geom::Geometry;
using geom::Mode;

// e^{-2 tau lambda_j}|phi_j(zeta)|^2, combined in log space: the damped
// weight is polynomially bounded even where |phi|^2 alone overflows.
double damped_weight(const Eigendata& data, const Mode& mode, double tau, const TubePoint& p) {
    return std::exp(data.log_abs2(mode, p) - 2.0 * tau * mode.lambda);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton on the recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

} // namespace

double tempered_sum(const Eigendata& data, const TubePoint& zeta, double tau, double lambda) {
    if (lambda > data.lambda_max() + 1e-12)
        throw CoverageError("tempered_sum: eigendata cutoff below requested lambda");
    NeumaierSum acc;
    for (const Mode& mode : data.modes()) {
        if (mode.lambda > lambda) break;
        acc.add(damped_weight(data, mode, tau, zeta));
    }
    return acc.value();
}

std::vector<double> tempered_sum_grid(const Eigendata& data, const TubePoint& zeta, double tau,
                                      const std::vector<double>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw DomainError("tempered_sum_grid: grid must be increasing");
    if (!grid.empty() && grid.back() > data.lambda_max() + 1e-12)
        throw CoverageError("tempered_sum_grid: eigendata cutoff below requested lambda");
    NeumaierSum acc;
    std::size_t i = 0;
    for (double lambda : grid) {
        while (i < data.size() && data.modes()[i].lambda <= lambda) {
            const Mode& mode = data.modes()[i];
            acc.add(damped_weight(data, mode, tau, zeta));
            ++i;
        }
        out.push_back(acc.value());
    }
    return out;
}

double spectral_gap_delta(const Eigendata& data) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < data.size(); ++i) {
        const double d = data.modes()[i].lambda - data.modes()[i - 1].lambda;
        if (d > 1e-12) gap = std::min(gap, d);
    }
    if (!std::isfinite(gap)) gap = 1.0;
    return 0.5 * gap;
}

double jump_at(const Eigendata& data, const TubePoint& zeta, double tau, double lambda_j) {
    bool found = false;
    for (const Mode& mode : data.modes())
        if (std::abs(mode.lambda - lambda_j) <= 1e-12) {
            found = true;
            break;
        }
    if (!found) throw LookupError("jump_at: lambda_j is not an eigenvalue of the loaded data");
    const double delta = spectral_gap_delta(data);
    return tempered_sum(data, zeta, tau, lambda_j + delta) -
           tempered_sum(data, zeta, tau, lambda_j - delta);
}

TemperedSumSeries make_series(const Eigendata& data, const TubePoint& zeta, double tau,
                              const std::vector<double>& grid, bool record_jumps) {
    TemperedSumSeries s;
    s.geometry = data.geometry();
    s.zeta = zeta;
    s.tau = tau;
    s.grid = grid;
    s.values = tempered_sum_grid(data, zeta, tau, grid);
    if (record_jumps && !grid.empty()) {
        double prev = -1.0;
        for (const Mode& mode : data.modes()) {
            if (mode.lambda < grid.front() || mode.lambda > grid.back()) continue;
            if (std::abs(mode.lambda - prev) <= 1e-12) continue;
            prev = mode.lambda;
            s.jump_records.emplace_back(mode.lambda, jump_at(data, zeta, tau, mode.lambda));
        }
    }
    return s;
}

double torus_l2_bessel(double k_norm, double tau) {
    return kTwoPi * tau * special::bessel_i0(2.0 * k_norm * tau);
}

namespace {

double l2_torus(const Eigendata& data, const Mode& mode, double tau, QuadratureSpec quad) {
    if (data.dim() != 2)
        throw DomainError("l2_norm_boundary: torus quadrature implemented for m = 2");
    const double knorm = mode.lambda;
    const int required = static_cast<int>(std::ceil(2.0 * tau * knorm)) + 16;
    const int nodes = quad.nodes > 0 ? quad.nodes
                                     : std::max(256, 2 * static_cast<int>(std::ceil(2.0 * tau * knorm)) + 128);
    if (nodes < required)
        throw AccuracyError("l2_norm_boundary: fiber quadrature under-resolved for |k|");
    // tau * int_0^{2pi} exp(-2 tau |k| cos u) du by trapezoid
    const double x = 2.0 * tau * knorm;
    const double val = deterministic_sum(static_cast<std::size_t>(nodes), [&](std::size_t i) {
        return std::exp(-x * std::cos(kTwoPi * double(i) / nodes));
    });
    return tau * val * (kTwoPi / nodes);
}

double l2_circle(const Mode& mode, double tau) {
    // fiber S^0: two points, counting measure
    return 2.0 * std::cosh(2.0 * mode.idx[0] * tau);
}

double l2_sphere(const Eigendata& data, const Mode& mode, double tau, QuadratureSpec quad) {
    const int n = mode.idx[0];
    const int required = 2 * n + 2;
    const int n_psi = quad.nodes > 0 ? quad.nodes : std::max(64, 2 * n + 16);
    const int n_phi = quad.nodes > 0 ? quad.nodes : std::max(64, 2 * n + 32);
    if (std::min(n_psi, n_phi) < required)
        throw AccuracyError("l2_norm_boundary: sphere quadrature under-resolved for N");
    std::vector<double> gx, gw;
    gauss_legendre(n_phi, gx, gw);
    // (tau/2) int_{-1}^{1} dcos(phi) int_0^{2pi} dpsi |Y(zeta(phi, psi))|^2,
    // base azimuth fixed by rotational symmetry.
    const double dpsi = kTwoPi / n_psi;
    const std::size_t total = static_cast<std::size_t>(n_phi) * n_psi;
    const double sum = deterministic_sum(total, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / n_psi);
        const int j = static_cast<int>(idx % n_psi);
        const double cphi = gx[i];
        const double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
        const double psi = j * dpsi;
        TubePoint p;
        p.geometry = Geometry::Sphere;
        p.m = 2;
        Eigen::Vector3d x(sphi, 0.0, cphi);
        Eigen::Vector3d e_theta(0.0, 1.0, 0.0);
        Eigen::Vector3d e_phi(cphi, 0.0, -sphi);
        Eigen::Vector3d v = std::cos(psi) * e_theta + std::sin(psi) * e_phi;
        p.x = x;
        p.xi = tau * v;
        p.tau = tau;
        return gw[i] * data.abs2(mode, p);
    });
    return 0.5 * tau * sum * dpsi;
}

} // namespace

double l2_norm_boundary(const Eigendata& data, std::size_t entry, double tau,
                        QuadratureSpec quad) {
    if (entry >= data.size()) throw LookupError("l2_norm_boundary: entry out of range");
    const Mode& mode = data.modes()[entry];
    switch (data.geometry()) {
        case Geometry::Circle: return l2_circle(mode, tau);
        case Geometry::Torus: return l2_torus(data, mode, tau, quad);
        case Geometry::Sphere:
            if (data.family() == Eigendata::Family::SphereCluster)
                throw DomainError("l2_norm_boundary: cluster diagonals are not single functions");
            return l2_sphere(data, mode, tau, quad);
    }
    throw NumericError("l2_norm_boundary: unreachable");
}

double husimi(const Eigendata& data, std::size_t entry, double tau, const TubePoint& zeta) {
    const double norm_sq = l2_norm_boundary(data, entry, tau);
    if (!(norm_sq > 0.0)) throw NumericError("husimi: vanishing L2 norm");
    return data.abs2(data.modes()[entry], zeta) / norm_sq;
}

namespace {

TubePoint torus_fiber_point(const TubePoint& base, double angle, double tau) {
    TubePoint p = base;
    p.tau = tau;
    p.xi.resize(2);
    p.xi << tau * std::cos(angle), tau * std::sin(angle);
    return p;
}

TubePoint sphere_grid_point(double phi, double psi, double tau) {
    TubePoint p;
    p.geometry = Geometry::Sphere;
    p.m = 2;
    const double cphi = std::cos(phi), sphi = std::sin(phi);
    Eigen::Vector3d x(sphi, 0.0, cphi);
    Eigen::Vector3d e_theta(0.0, 1.0, 0.0);
    Eigen::Vector3d e_phi(cphi, 0.0, -sphi);
    p.x = x;
    p.xi = tau * (std::cos(psi) * e_theta + std::sin(psi) * e_phi);
    p.tau = tau;
    return p;
}

} // namespace

SupResult husimi_sup(const Eigendata& data, std::size_t entry, double tau) {
    if (entry >= data.size()) throw LookupError("husimi_sup: entry out of range");
    const Mode& mode = data.modes()[entry];
    const double lambda = std::max(1.0, mode.lambda);
    const double step = 0.2 / std::sqrt(lambda);
    const double norm = std::sqrt(l2_norm_boundary(data, entry, tau));

    if (data.geometry() == Geometry::Circle) {
        TubePoint plus = geom::tube_point(Geometry::Circle, Eigen::VectorXd::Zero(1),
                                          Eigen::VectorXd::Ones(1), tau);
        TubePoint minus = plus;
        minus.xi(0) = -tau;
        const double vp = std::sqrt(data.abs2(mode, plus));
        const double vm = std::sqrt(data.abs2(mode, minus));
        return vp >= vm ? SupResult{vp / norm, plus} : SupResult{vm / norm, minus};
    }

    if (data.geometry() == Geometry::Torus) {
        // |phi| depends only on the fiber direction; scan and refine it.
        TubePoint base = geom::tube_point(Geometry::Torus, Eigen::VectorXd::Zero(2),
                                          (Eigen::VectorXd(2) << 1.0, 0.0).finished(), tau);
        const int n = std::max<int>(64, static_cast<int>(std::ceil(kTwoPi / step)));
        double best = -std::numeric_limits<double>::infinity();
        double best_angle = 0.0;
        for (int i = 0; i < n; ++i) {
            const double ang = kTwoPi * i / n;
            const double v = data.log_abs2(mode, torus_fiber_point(base, ang, tau));
            if (v > best) {
                best = v;
                best_angle = ang;
            }
        }
        double h = kTwoPi / n;
        while (h > 1e-10) {
            for (double cand : {best_angle - h, best_angle + h}) {
                const double v = data.log_abs2(mode, torus_fiber_point(base, cand, tau));
                if (v > best) {
                    best = v;
                    best_angle = cand;
                }
            }
            h *= 0.6;
        }
        TubePoint arg = torus_fiber_point(base, best_angle, tau);
        return {std::exp(0.5 * best) / norm, arg};
    }

    // Sphere: 2-parameter grid (colatitude, fiber angle), azimuth fixed by symmetry.
    const int n_phi = std::max<int>(48, static_cast<int>(std::ceil(kPi / step)));
    const int n_psi = std::max<int>(96, static_cast<int>(std::ceil(kTwoPi / step)));
    double best = -std::numeric_limits<double>::infinity();
    double bphi = kPi / 2, bpsi = 0.0;
    for (int i = 1; i < n_phi; ++i) {
        const double phi = kPi * i / n_phi;
        for (int j = 0; j < n_psi; ++j) {
            const double psi = kTwoPi * j / n_psi;
            const double v = data.log_abs2(mode, sphere_grid_point(phi, psi, tau));
            if (v > best) {
                best = v;
                bphi = phi;
                bpsi = psi;
            }
        }
    }
    double h = std::max(kPi / n_phi, kTwoPi / n_psi);
    while (h > 1e-10) {
        bool moved = false;
        const double cand_phi[] = {bphi - h, bphi + h, bphi, bphi};
        const double cand_psi[] = {bpsi, bpsi, bpsi - h, bpsi + h};
        for (int c = 0; c < 4; ++c) {
            const double phi = std::clamp(cand_phi[c], 1e-6, kPi - 1e-6);
            const double v = data.log_abs2(mode, sphere_grid_point(phi, cand_psi[c], tau));
            if (v > best) {
                best = v;
                bphi = phi;
                bpsi = cand_psi[c];
                moved = true;
            }
        }
        if (!moved) h *= 0.6;
    }
    return {std::exp(0.5 * best) / norm, sphere_grid_point(bphi, bpsi, tau)};
}

double SmoothingKernel::operator()(double x) const {
    const double u = a * x;
    if (std::abs(u) < 1e-8) {
        const double s = 1.0 - u * u / 6.0;
        return c * std::pow(s, 2 * p);
    }
    return c * std::pow(std::sin(u) / u, 2 * p);
}

namespace {

// n-fold self-convolution of the unit-height box on [-a, a], by the
// truncated-power formula.
double box_convolution(int n, double a, double t) {
    if (std::abs(t) >= n * a) return 0.0;
    double binom = 1.0;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double base = t + n * a - 2.0 * a * k;
        if (base > 0.0) acc += binom * std::pow(base, n - 1);
        binom *= -double(n - k) / double(k + 1);
    }
    double fact = 1.0;
    for (int k = 2; k <= n - 1; ++k) fact *= k;
    return acc / fact;
}

// int sinc^n(u) du = pi/(2^{n-1} (n-1)!) sum_k (-1)^k C(n,k) (n-2k)^{n-1}
double sinc_power_integral(int n) {
    double fact = 1.0;
    for (int k = 2; k <= n - 1; ++k) fact *= k;
    double binom = 1.0;
    double acc = 0.0;
    for (int k = 0; 2 * k < n; ++k) {
        acc += binom * std::pow(double(n - 2 * k), n - 1);
        binom *= -double(n - k) / double(k + 1);
    }
    return kPi / (std::pow(2.0, n - 1) * fact) * acc;
}

} // namespace

double SmoothingKernel::hat(double t) const {
    // FT of a 2p-fold sinc product: (1/2pi)^{2p-1} (pi/a)^{2p} times the
    // 2p-fold box self-convolution. hat(0) = 1 follows from the independent
    // sinc-power integral behind c.
    const int n = 2 * p;
    const double scale = c * std::pow(1.0 / kTwoPi, n - 1) * std::pow(kPi / a, n);
    return scale * box_convolution(n, a, t);
}

double SmoothingKernel::effective_width(double rel_threshold) const {
    // envelope c (a x)^{-2p} falls to rel_threshold * c
    return std::pow(rel_threshold, -1.0 / (2.0 * p)) / a;
}

SmoothingKernel build_smoothing_kernel(int p, double support_radius) {
    if (p < 2) throw DomainError("build_smoothing_kernel: p must be at least 2");
    if (support_radius <= 0.0)
        throw DomainError("build_smoothing_kernel: support radius must be positive");
    SmoothingKernel k;
    k.p = p;
    k.support_radius = support_radius;
    k.a = support_radius / (2.0 * p);
    k.c = k.a / sinc_power_integral(2 * p);
    return k;
}

double smoothed_density(const Eigendata& data, const TubePoint& zeta, double tau,
                        const SmoothingKernel& kernel, double lambda) {
    const double width = kernel.effective_width();
    if (data.lambda_max() + 1e-12 < lambda + width)
        throw CoverageError("smoothed_density: eigendata must reach lambda + kernel width");
    NeumaierSum acc;
    for (const Mode& mode : data.modes()) {
        if (mode.lambda < lambda - width) continue;
        if (mode.lambda > lambda + width) break;
        acc.add(kernel(mode.lambda - lambda) * damped_weight(data, mode, tau, zeta));
    }
    return acc.value();
}

std::complex<double> period_coefficient_extract(const Eigendata& data, const TubePoint& zeta,
                                                double tau, int n, double lambda, double period,
                                                const SmoothingKernel& window,
                                                double calibration) {
    if (n < 1) throw DomainError("period_coefficient_extract: n must be positive");
    if (window.support_radius >= 0.5 * period)
        throw ConfigError("period_coefficient_extract: window overlaps a neighboring period");
    if (n * period - window.support_radius <= 0.0)
        throw ConfigError("period_coefficient_extract: window must avoid t = 0");
    const double width = window.effective_width();
    if (data.lambda_max() + 1e-12 < lambda + width)
        throw CoverageError("period_coefficient_extract: eigendata must reach lambda + width");
    const double nt = n * period;
    NeumaierSum re, im;
    for (const Mode& mode : data.modes()) {
        if (mode.lambda < lambda - width) continue;
        if (mode.lambda > lambda + width) break;
        const double x = mode.lambda - lambda;
        const double w = window(x) * damped_weight(data, mode, tau, zeta);
        re.add(w * std::cos(nt * x));
        im.add(w * std::sin(nt * x));
    }
    const std::complex<double> sum(re.value(), im.value());
    const double scale = calibration * std::pow(lambda, 0.5 * (data.dim() - 1));
    return sum * std::polar(1.0, lambda * nt) / scale;
}

double calibrate_extraction(const Eigendata& data, const TubePoint& zeta, double tau,
                            double period, const SmoothingKernel& window, double lambda_calib,
                            int n) {
    const std::complex<double> raw =
        period_coefficient_extract(data, zeta, tau, n, lambda_calib, period, window, 1.0);
    return std::abs(raw);
}

FitResult fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 4)
        throw DomainError("fit_power_law: need at least 4 matching samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i % 4 == 3) continue; // held out
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    FitResult fit;
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.amplitude = std::exp((sy - fit.exponent * sx) / n);
    fit.window_lo = xs.front();
    fit.window_hi = xs.back();
    for (std::size_t i = 3; i < xs.size(); i += 4) {
        const double model = fit.amplitude * std::pow(xs[i], fit.exponent);
        fit.residual = std::max(fit.residual, std::abs(ys[i] / model - 1.0));
    }
    return fit;
}

FitResult two_term_residual(const Eigendata& data, const TubePoint& zeta, double tau,
                            const std::function<double(double)>& q_of_lambda,
                            const std::vector<double>& grid) {
    const std::vector<double> values = tempered_sum_grid(data, zeta, tau, grid);
    const double power = 0.5 * (data.dim() + 1);
    // fit c on the upper half of the grid where the leading term dominates
    double num = 0.0, den = 0.0;
    for (std::size_t i = grid.size() / 2; i < grid.size(); ++i) {
        const double model = std::pow(grid[i], power);
        num += values[i] * model;
        den += model * model;
    }
    FitResult fit;
    fit.exponent = power;
    fit.amplitude = num / den;
    fit.window_lo = grid.front();
    fit.window_hi = grid.back();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lambda = grid[i];
        const double r = values[i] / (fit.amplitude * std::pow(lambda, power)) - 1.0 -
                         q_of_lambda(lambda) / lambda;
        fit.residual = std::max(fit.residual, std::abs(r) * lambda);
    }
    return fit;
}

FitResult two_term_residual(const Eigendata& data, const TubePoint& zeta, double tau,
                            const qfunction::QFunctionSpec& qspec,
                            const std::vector<double>& grid) {
    return two_term_residual(
        data, zeta, tau,
        [&](double lambda) { return qfunction::q_eval(qspec, lambda); }, grid);
}

double zoll_cluster_sum(const Eigendata& clusters, const TubePoint& zeta, double tau, int n) {
    if (clusters.family() != Eigendata::Family::SphereCluster)
        throw DomainError("zoll_cluster_sum: needs sphere cluster data");
    for (const Mode& mode : clusters.modes())
        if (mode.idx[0] == n)
            return damped_weight(clusters, mode, tau, zeta);
    throw LookupError("zoll_cluster_sum: cluster index out of range");
}

} // namespace grauert::weyl
