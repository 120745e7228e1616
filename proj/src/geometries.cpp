#include "grauert/geometries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "grauert/special.hpp"
#include "grauert/summation.hpp"

namespace grauert::geom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

int zonal_nodes(int n, int override_nodes) {
    return override_nodes > 0 ? override_nodes : std::max(256, 8 * n);
}

} // namespace

TubePoint tube_point(Geometry g, const Eigen::VectorXd& x, const Eigen::VectorXd& xi_direction,
                     double tau) {
    if (tau < 0.0) throw DomainError("tube_point: tau must be nonnegative");
    TubePoint p;
    p.geometry = g;
    p.tau = tau;
    switch (g) {
        case Geometry::Circle:
            p.m = 1;
            if (x.size() != 1 || xi_direction.size() != 1)
                throw DimensionError("tube_point: circle takes one angle and one direction");
            break;
        case Geometry::Torus:
            p.m = static_cast<int>(x.size());
            if (xi_direction.size() != p.m)
                throw DimensionError("tube_point: direction dimension mismatch");
            break;
        case Geometry::Sphere:
            p.m = 2;
            if (x.size() != 3 || xi_direction.size() != 3)
                throw DimensionError("tube_point: sphere takes 3-vectors");
            if (std::abs(x.norm() - 1.0) > 1e-9)
                throw DomainError("tube_point: base point must lie on the sphere");
            if (std::abs(x.dot(xi_direction)) > 1e-9)
                throw DomainError("tube_point: direction must be tangent");
            break;
    }
    if (std::abs(xi_direction.norm() - 1.0) > 1e-9)
        throw DomainError("tube_point: direction must be unit length");
    p.x = x;
    p.xi = tau * xi_direction;
    return p;
}

TubePoint geodesic_flow(const TubePoint& p, double t) {
    TubePoint q = p;
    if (p.tau <= 0.0) throw DomainError("geodesic_flow: needs a positive tube radius");
    if (p.geometry == Geometry::Sphere) {
        const Eigen::VectorXd v = p.xi / p.tau;
        q.x = std::cos(t) * p.x + std::sin(t) * v;
        q.xi = p.tau * (-std::sin(t) * p.x + std::cos(t) * v);
        return q;
    }
    const Eigen::VectorXd dir = p.xi / p.tau;
    for (int i = 0; i < p.x.size(); ++i) q.x(i) = wrap_angle(p.x(i) + t * dir(i));
    return q;
}

Eigen::Vector3cd sphere_embed(const TubePoint& p) {
    if (p.geometry != Geometry::Sphere) throw DomainError("sphere_embed: wrong geometry");
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    if (p.tau > 0.0) v = p.xi / p.tau;
    Eigen::Vector3cd z;
    for (int i = 0; i < 3; ++i)
        z(i) = Complex(std::cosh(p.tau) * p.x(i), std::sinh(p.tau) * v(i));
    return z;
}

double sphere_grauert_radius(const Eigen::Vector3cd& z) {
    const Complex dot = z(0) * std::conj(z(0)) + z(1) * std::conj(z(1)) + z(2) * std::conj(z(2));
    // r_C(z, zbar) = arccos(z . zbar); the radius is |Im arccos| / 2.
    const Complex r = std::acos(dot);
    return 0.5 * std::abs(r.imag());
}

Eigendata Eigendata::circle(double lambda_max) {
    if (lambda_max < 0.0) throw DomainError("circle eigendata: lambda_max must be nonnegative");
    Eigendata out;
    out.geometry_ = Geometry::Circle;
    out.family_ = Family::PlaneWave;
    out.m_ = 1;
    const int kmax = static_cast<int>(std::floor(lambda_max));
    for (int k = -kmax; k <= kmax; ++k) {
        Mode mode;
        mode.lambda = std::abs(k);
        mode.idx[0] = k;
        out.modes_.push_back(mode);
    }
    std::sort(out.modes_.begin(), out.modes_.end(), [](const Mode& a, const Mode& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.idx[0] < b.idx[0];
    });
    return out;
}

Eigendata Eigendata::torus(int m, double lambda_max) {
    if (m < 1 || m > 4) throw DimensionError("torus eigendata: m must be in 1..4");
    if (lambda_max < 0.0) throw DomainError("torus eigendata: lambda_max must be nonnegative");
    // ball-volume estimate against the memory budget
    const double unit_ball = std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
    const double estimate = unit_ball * std::pow(lambda_max + 1.0, m);
    if (estimate > 2e8)
        throw ResourceError("torus eigendata: lattice too large, ~" + std::to_string(estimate) +
                            " points");
    Eigendata out;
    out.geometry_ = Geometry::Torus;
    out.family_ = Family::PlaneWave;
    out.m_ = m;
    const int kmax = static_cast<int>(std::floor(lambda_max));
    const double lam2 = lambda_max * lambda_max;
    std::vector<int> k(m, -kmax);
    for (;;) {
        double n2 = 0.0;
        for (int i = 0; i < m; ++i) n2 += double(k[i]) * double(k[i]);
        if (n2 <= lam2) {
            Mode mode;
            mode.lambda = std::sqrt(n2);
            for (int i = 0; i < m; ++i) mode.idx[i] = k[i];
            out.modes_.push_back(mode);
        }
        int i = m - 1;
        while (i >= 0 && k[i] == kmax) k[i--] = -kmax;
        if (i < 0) break;
        ++k[i];
    }
    std::sort(out.modes_.begin(), out.modes_.end(), [](const Mode& a, const Mode& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.idx < b.idx;
    });
    return out;
}

Eigendata Eigendata::sphere_clusters(int n_max) {
    Eigendata out;
    out.geometry_ = Geometry::Sphere;
    out.family_ = Family::SphereCluster;
    out.m_ = 2;
    for (int n = 0; n <= n_max; ++n) {
        Mode mode;
        mode.lambda = std::sqrt(double(n) * (double(n) + 1.0));
        mode.idx[0] = n;
        out.modes_.push_back(mode);
    }
    return out;
}

Eigendata Eigendata::sphere_highest(int n_max) {
    Eigendata out = sphere_clusters(n_max);
    out.family_ = Family::SphereHighest;
    for (auto& mode : out.modes_) mode.idx[1] = mode.idx[0];
    return out;
}

Eigendata Eigendata::sphere_zonal(int n_max, int quad_nodes) {
    if (quad_nodes > 0 && quad_nodes <= 2 * n_max + 1)
        throw AccuracyError("sphere_zonal: quadrature nodes below the Nyquist count");
    Eigendata out = sphere_clusters(n_max);
    out.family_ = Family::SphereZonal;
    out.quad_nodes_ = quad_nodes;
    return out;
}

double Eigendata::highest_weight_constant(int n) const {
    // ||Y_N^N||_{L2(S^2, dS)} = 1 with |Y_N^N| = c_n |x + iy|^N:
    // c_n^2 = Gamma(N + 3/2) / (2 pi^{3/2} Gamma(N + 1)).
    const double log_c2 =
        special::lgamma_ratio(n + 1.5, n + 1.0) - std::log(2.0) - 1.5 * std::log(kPi);
    return std::exp(0.5 * log_c2);
}

double Eigendata::abs2(const Mode& mode, const TubePoint& p) const {
    switch (family_) {
        case Family::PlaneWave: {
            double dot = 0.0;
            for (int i = 0; i < m_; ++i) dot += p.xi(i) * mode.idx[i];
            return std::exp(-2.0 * dot);
        }
        case Family::SphereCluster: {
            const int n = mode.idx[0];
            const double u = std::cosh(2.0 * p.tau);
            return (2.0 * n + 1.0) / (4.0 * kPi) * special::legendre_p(n, u);
        }
        case Family::SphereHighest:
        case Family::SphereZonal:
            return std::exp(log_abs2(mode, p));
    }
    throw NumericError("abs2: unreachable");
}

double Eigendata::log_abs2(const Mode& mode, const TubePoint& p) const {
    switch (family_) {
        case Family::PlaneWave: {
            double dot = 0.0;
            for (int i = 0; i < m_; ++i) dot += p.xi(i) * mode.idx[i];
            return -2.0 * dot;
        }
        case Family::SphereCluster:
            return std::log(abs2(mode, p));
        case Family::SphereHighest: {
            const int n = mode.idx[0];
            const Eigen::Vector3cd z = sphere_embed(p);
            const Complex w = z(0) + Complex(0.0, 1.0) * z(1);
            const double log_c2 =
                special::lgamma_ratio(n + 1.5, n + 1.0) - std::log(2.0) - 1.5 * std::log(kPi);
            return log_c2 + 2.0 * n * std::log(std::abs(w));
        }
        case Family::SphereZonal: {
            const Complex val = complexified(mode, p);
            return 2.0 * std::log(std::abs(val));
        }
    }
    throw NumericError("log_abs2: unreachable");
}

Complex Eigendata::complexified(const Mode& mode, const TubePoint& p) const {
    switch (family_) {
        case Family::PlaneWave: {
            Complex phase = 0.0;
            for (int i = 0; i < m_; ++i)
                phase += Complex(p.x(i), p.xi(i)) * double(mode.idx[i]);
            return std::exp(Complex(0.0, 1.0) * phase);
        }
        case Family::SphereCluster:
            throw DomainError("complexified: cluster diagonals have no single evaluator");
        case Family::SphereHighest: {
            const int n = mode.idx[0];
            const Eigen::Vector3cd z = sphere_embed(p);
            const Complex w = z(0) + Complex(0.0, 1.0) * z(1);
            return highest_weight_constant(n) * std::pow(w, n);
        }
        case Family::SphereZonal: {
            const int n = mode.idx[0];
            const Eigen::Vector3cd z = sphere_embed(p);
            const double c = std::sqrt((2.0 * n + 1.0) / (4.0 * kPi));
            return c * special::legendre_p_quadrature(n, z(2), zonal_nodes(n, quad_nodes_));
        }
    }
    throw NumericError("complexified: unreachable");
}

Eigendata::Entry Eigendata::entry(std::size_t i) const {
    if (i >= modes_.size()) throw LookupError("Eigendata::entry: index out of range");
    const Mode mode = modes_[i];
    Entry e;
    e.lambda = mode.lambda;
    for (int j = 0; j < m_ || j < 2; ++j) e.index.push_back(mode.idx[j]);
    if (family_ != Family::SphereCluster)
        e.eval_complexified = [this, mode](const TubePoint& p) { return complexified(mode, p); };
    e.eval_abs2 = [this, mode](const TubePoint& p) { return abs2(mode, p); };
    e.eval_log_abs2 = [this, mode](const TubePoint& p) { return log_abs2(mode, p); };
    return e;
}

double sphere_monomial_norm_sq_gamma(int n) {
    return std::exp(special::lgamma_ratio(n + 1.0, n + 1.5));
}

Complex sphere_projection_kernel(int n, const Eigen::Vector3cd& z, const Eigen::Vector3cd& w) {
    const Complex dot = z(0) * w(0) + z(1) * w(1) + z(2) * w(2);
    return (2.0 * n + 1.0) / (4.0 * kPi) * special::legendre_p(n, dot);
}

namespace {

// Smallest integer vector parallel to the unit direction, or empty.
Eigen::VectorXi rational_direction(const Eigen::VectorXd& dir, int denominator_cap) {
    const int m = static_cast<int>(dir.size());
    int jmax = 0;
    for (int i = 1; i < m; ++i)
        if (std::abs(dir(i)) > std::abs(dir(jmax))) jmax = i;
    if (std::abs(dir(jmax)) == 0.0) return {};
    const Eigen::VectorXd u = dir / dir(jmax);
    for (int den = 1; den <= denominator_cap; ++den) {
        Eigen::VectorXi k(m);
        bool ok = true;
        for (int i = 0; i < m; ++i) {
            const double v = den * u(i);
            k(i) = static_cast<int>(std::lround(v));
            if (std::abs(v - k(i)) > 1e-9 * den) {
                ok = false;
                break;
            }
        }
        if (ok) {
            int g = 0;
            for (int i = 0; i < m; ++i) g = std::gcd(g, std::abs(k(i)));
            if (g > 0) {
                for (int i = 0; i < m; ++i) k(i) /= g;
            }
            if (dir(jmax) < 0.0) k = -k;
            return k;
        }
    }
    return {};
}

} // namespace

std::optional<PoincareData> poincare_data(const TubePoint& p, int denominator_cap) {
    PoincareData out;
    switch (p.geometry) {
        case Geometry::Circle: {
            out.period = kTwoPi;
            out.period_literal = kTwoPi;
            out.map = symplectic::SymplecticMap();
            out.tag = symplectic::classify(*out.map);
            return out;
        }
        case Geometry::Sphere: {
            out.period = kTwoPi;
            out.period_literal = kTwoPi;
            out.map = symplectic::SymplecticMap(Eigen::MatrixXd::Identity(2, 2));
            out.tag = symplectic::classify(*out.map);
            // Path-counted Floquet exponent of the full Jacobi rotation.
            out.exponents = {kTwoPi};
            return out;
        }
        case Geometry::Torus: {
            if (p.tau <= 0.0) throw DomainError("poincare_data: needs a positive tube radius");
            const Eigen::VectorXi k = rational_direction(p.xi / p.tau, denominator_cap);
            if (k.size() == 0) return std::nullopt;
            const double knorm = std::sqrt(double(k.squaredNorm()));
            out.lattice = k;
            out.period = kTwoPi * knorm;
            out.period_literal = knorm;
            out.parabolic = true;
            const int d = p.m - 1;
            if (d > 0) {
                Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2 * d, 2 * d);
                s.topRightCorner(d, d) =
                    (out.period / p.tau) * Eigen::MatrixXd::Identity(d, d);
                out.map = symplectic::SymplecticMap(std::move(s));
                out.tag = symplectic::classify(*out.map);
            } else {
                out.map = symplectic::SymplecticMap();
                out.tag = symplectic::classify(*out.map);
            }
            return out;
        }
    }
    return std::nullopt;
}

double flat_torus_q(const Eigen::VectorXi& k, double tau, double lambda, int m, long n_terms) {
    if (k.size() == 0 || k.squaredNorm() == 0)
        throw DomainError("flat_torus_q: k must be a nonzero lattice vector");
    const double knorm = std::sqrt(double(k.squaredNorm()));
    const double half_power = 0.5 * (m - 1);
    NeumaierSum acc;
    for (long n = 1; n <= n_terms; ++n) {
        const Complex base = lambda / Complex(double(n) * knorm, 2.0 * tau);
        acc.add(std::sin(n * lambda * knorm) / (double(n) * knorm) *
                std::pow(base, half_power).real());
    }
    return acc.value();
}

} // namespace grauert::geom
