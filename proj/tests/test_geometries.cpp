#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "grauert/geometries.hpp"
#include "grauert/special.hpp"

using namespace grauert;
using namespace grauert::geom;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd vec1(double a) {
    Eigen::VectorXd v(1);
    v << a;
    return v;
}
Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}
Eigen::VectorXd vec3(double a, double b, double c) {
    Eigen::VectorXd v(3);
    v << a, b, c;
    return v;
}

// Real spherical harmonic |Y_N^m| oracle pieces for the addition theorem:
// normalized associated Legendre, P-bar_l^m(x) with
// Y_l^m = P-bar e^{i m phi} and sum_m |Y_l^m(x)|^2 = (2l+1)/(4pi).
double normalized_plm(int l, int m, double x) {
    // standard stable recurrence on the normalized functions
    const double somx2 = std::sqrt(std::max(0.0, 1.0 - x * x));
    double pmm = std::sqrt(1.0 / (4.0 * kPi));
    for (int k = 1; k <= m; ++k)
        pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * somx2;
    if (l == m) return pmm;
    double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
        const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(m) * m) /
                                   (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
        pll = a * (x * pmmp1 - b * pmm);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}
} // namespace

TEST_CASE("special functions") {
    // I0 series vs integral definition at a few points
    for (double x : {0.5, 2.0, 10.0, 100.0, 200.0}) {
        const int n = 4096;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += std::exp(x * std::cos(kTwoPi * i / n));
        acc /= n;
        CHECK(special::bessel_i0(x) == doctest::Approx(acc).epsilon(1e-12));
    }
    // Legendre recurrence vs quadrature at complex arguments
    for (int n : {3, 10, 41}) {
        CHECK(special::legendre_p(n, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
        const Complex z(1.1, 0.3);
        const Complex a = special::legendre_p(n, z);
        const Complex b = special::legendre_p_quadrature(n, z, std::max(256, 8 * n));
        CHECK(std::abs(a - b) / std::abs(a) < 1e-11);
    }
    CHECK_THROWS_AS(special::legendre_p_quadrature(10, Complex(1.0, 0.0), 8), AccuracyError);
}

TEST_CASE("tube points and the sphere embedding") {
    TubePoint p = tube_point(Geometry::Sphere, vec3(0, 0, 1), vec3(1, 0, 0), 0.5);
    const Eigen::Vector3cd z = sphere_embed(p);
    CHECK(std::abs(z(0) - Complex(0.0, 0.52109530549)) < 1e-9);
    CHECK(std::abs(z(1)) == 0.0);
    CHECK(std::abs(z(2) - Complex(1.12762596521, 0.0)) < 1e-9);
    // z . z = 1 on the complexified sphere
    const Complex zz = z(0) * z(0) + z(1) * z(1) + z(2) * z(2);
    CHECK(std::abs(zz - 1.0) < 1e-12);
    // Grauert radius identity
    CHECK(sphere_grauert_radius(z) == doctest::Approx(0.5).epsilon(1e-10));

    // tau -> 0 gives the real point
    TubePoint p0 = tube_point(Geometry::Sphere, vec3(0, 0, 1), vec3(1, 0, 0), 0.0);
    CHECK((sphere_embed(p0) - Eigen::Vector3cd(0, 0, 1)).norm() < 1e-15);

    CHECK_THROWS_AS(tube_point(Geometry::Sphere, vec3(0, 0, 1), vec3(2, 0, 0), 0.5), DomainError);
    CHECK_THROWS_AS(tube_point(Geometry::Sphere, vec3(0, 0, 1), vec3(0, 0, 1), 0.5), DomainError);
    CHECK_THROWS_AS(tube_point(Geometry::Torus, vec2(0, 0), vec2(1, 0), -0.1), DomainError);
}

TEST_CASE("random sphere tube points keep the two invariants") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (int k = 0; k < 200; ++k) {
        Eigen::Vector3d x(g(rng), g(rng), g(rng));
        x.normalize();
        Eigen::Vector3d v(g(rng), g(rng), g(rng));
        v -= v.dot(x) * x;
        v.normalize();
        const double tau = 0.05 + 0.4 * std::abs(g(rng));
        TubePoint p = tube_point(Geometry::Sphere, x, v, tau);
        const Eigen::Vector3cd z = sphere_embed(p);
        const Complex zz = z(0) * z(0) + z(1) * z(1) + z(2) * z(2);
        CHECK(std::abs(zz - 1.0) < 1e-12);
        CHECK(std::abs(sphere_grauert_radius(z) - tau) < 1e-10);
    }
}

TEST_CASE("geodesic flow") {
    // group law on the torus
    TubePoint p = tube_point(Geometry::Torus, vec2(0.3, 1.1), vec2(0.6, 0.8), 0.5);
    TubePoint a = geodesic_flow(p, 0.7 + 1.9);
    TubePoint b = geodesic_flow(geodesic_flow(p, 0.7), 1.9);
    CHECK((a.x - b.x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a.xi - b.xi).cwiseAbs().maxCoeff() < 1e-12);

    // sphere: every geodesic closes after 2 pi
    TubePoint s = tube_point(Geometry::Sphere, vec3(1, 0, 0), vec3(0, 1, 0), 0.3);
    TubePoint s2 = geodesic_flow(s, kTwoPi);
    CHECK((s2.x - s.x).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s2.xi - s.xi).cwiseAbs().maxCoeff() < 1e-12);
    // group law on the sphere
    TubePoint c = geodesic_flow(s, 0.4 + 0.9);
    TubePoint d = geodesic_flow(geodesic_flow(s, 0.4), 0.9);
    CHECK((c.x - d.x).cwiseAbs().maxCoeff() < 1e-12);

    // torus periodicity along a lattice direction
    TubePoint q = tube_point(Geometry::Torus, vec2(0.2, 0.4), vec2(1, 0), 0.5);
    TubePoint q2 = geodesic_flow(q, kTwoPi);
    CHECK((q2.x - q.x).cwiseAbs().maxCoeff() < 1e-12);

    // t = 0 is the identity
    TubePoint e = geodesic_flow(p, 0.0);
    CHECK((e.x - p.x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("circle eigendata") {
    auto data = Eigendata::circle(10.0);
    CHECK(data.size() == 21);

    TubePoint p = tube_point(Geometry::Circle, vec1(0.7), vec1(-1.0), 0.5);
    // k = 0 mode is constant
    auto e0 = data.entry(0);
    CHECK(e0.lambda == 0.0);
    CHECK(std::abs(e0.eval_complexified(p) - 1.0) < 1e-15);

    // k = 3 at sigma = -0.5: |e|^2 = e^{-2 k sigma} = e^3
    TubePoint p3 = p; // xi = -0.5
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.modes()[i].idx[0] == 3) {
            CHECK(data.abs2(data.modes()[i], p3) == doctest::Approx(std::exp(3.0)).epsilon(1e-12));
            CHECK(std::abs(data.complexified(data.modes()[i], p3)) ==
                  doctest::Approx(std::exp(1.5)).epsilon(1e-12));
        }
    }
}

TEST_CASE("torus eigendata") {
    auto data = Eigendata::torus(2, 5.0);
    // brute-force lattice count oracle
    int count = 0;
    for (int i = -5; i <= 5; ++i)
        for (int j = -5; j <= 5; ++j)
            if (i * i + j * j <= 25) ++count;
    CHECK(count == 81);
    CHECK(data.size() == 81);

    // |e_k|^2 = e^{-2 <xi, k>}; max at xi = -tau k/|k|
    TubePoint p = tube_point(Geometry::Torus, vec2(0.0, 0.0), vec2(-1.0, 0.0), 0.5);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Mode& mode = data.modes()[i];
        if (mode.idx[0] == 1 && mode.idx[1] == 0)
            CHECK(data.abs2(mode, p) == doctest::Approx(std::exp(2.0 * 0.5)).epsilon(1e-12));
        if (mode.idx[0] == 0 && mode.idx[1] == 0) CHECK(data.abs2(mode, p) == 1.0);
    }

    // abs2 equals |complexified|^2 on random points
    TubePoint q = tube_point(Geometry::Torus, vec2(1.2, 2.3), vec2(0.6, 0.8), 0.37);
    for (std::size_t i = 0; i < data.size(); i += 7) {
        const Mode& mode = data.modes()[i];
        CHECK(std::norm(data.complexified(mode, q)) ==
              doctest::Approx(data.abs2(mode, q)).epsilon(1e-12));
        // restriction to tau = 0 is unimodular
        TubePoint q0 = tube_point(Geometry::Torus, vec2(1.2, 2.3), vec2(0.6, 0.8), 0.0);
        CHECK(std::abs(data.complexified(mode, q0)) == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(Eigendata::torus(2, 1e6), ResourceError);
}

TEST_CASE("sphere eigendata families") {
    auto highest = Eigendata::sphere_highest(12);
    auto zonal = Eigendata::sphere_zonal(12);
    auto clusters = Eigendata::sphere_clusters(12);

    CHECK(highest.modes()[5].lambda == doctest::Approx(std::sqrt(30.0)));

    // N = 0: constant harmonic, |Y|^2 = 1/(4 pi)
    TubePoint p = tube_point(Geometry::Sphere, vec3(1, 0, 0), vec3(0, 1, 0), 0.0);
    CHECK(highest.abs2(highest.modes()[0], p) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-12));
    CHECK(zonal.abs2(zonal.modes()[0], p) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-12));

    // zonal at the north pole, tau = 0: P_N(1) = 1
    TubePoint np = tube_point(Geometry::Sphere, vec3(0, 0, 1), vec3(1, 0, 0), 0.0);
    for (int n : {1, 4, 9}) {
        const Complex v = zonal.complexified(zonal.modes()[n], np);
        CHECK(std::abs(v - std::sqrt((2.0 * n + 1.0) / (4.0 * kPi))) < 1e-12);
    }

    // paper-convention monomial norm for N = 2
    CHECK(sphere_monomial_norm_sq_gamma(2) == doctest::Approx(0.6018022225).epsilon(1e-9));

    // cluster diagonal equals (2N+1)/(4pi) P_N(cosh 2 tau), independent of x, v
    TubePoint a = tube_point(Geometry::Sphere, vec3(0, 0, 1), vec3(1, 0, 0), 0.4);
    TubePoint b = tube_point(Geometry::Sphere, vec3(1, 0, 0), vec3(0, 0.6, 0.8), 0.4);
    for (int n : {0, 3, 8}) {
        CHECK(clusters.abs2(clusters.modes()[n], a) ==
              doctest::Approx(clusters.abs2(clusters.modes()[n], b)).epsilon(1e-12));
        CHECK(clusters.abs2(clusters.modes()[n], a) ==
              doctest::Approx((2.0 * n + 1.0) / (4.0 * kPi) *
                              special::legendre_p(n, std::cosh(0.8)))
                  .epsilon(1e-12));
    }

    CHECK_THROWS_AS(Eigendata::sphere_zonal(12, 20), AccuracyError);
    CHECK_THROWS_AS(clusters.complexified(clusters.modes()[1], a), DomainError);
}

TEST_CASE("addition theorem at real points") {
    // sum_m Y_N^m(x) conj(Y_N^m(y)) = (2N+1)/(4pi) P_N(x . y)
    const Eigen::Vector3d x = Eigen::Vector3d(0.3, -0.4, 0.866025403784439).normalized();
    const Eigen::Vector3d y = Eigen::Vector3d(-0.7, 0.1, 0.7).normalized();
    const double ctx = x(2), cty = y(2);
    const double phix = std::atan2(x(1), x(0)), phiy = std::atan2(y(1), y(0));
    for (int l : {1, 5, 12, 20}) {
        Complex lhs = 0.0;
        for (int m = -l; m <= l; ++m) {
            const int am = std::abs(m);
            const double plx = normalized_plm(l, am, ctx);
            const double ply = normalized_plm(l, am, cty);
            // Condon-Shortley phases cancel between the conjugate pair
            Complex yx = plx * std::exp(Complex(0, am * phix));
            Complex yy = ply * std::exp(Complex(0, am * phiy));
            if (m < 0) {
                yx = std::conj(yx) * std::pow(-1.0, am);
                yy = std::conj(yy) * std::pow(-1.0, am);
            }
            lhs += yx * std::conj(yy);
        }
        const double rhs = (2.0 * l + 1.0) / (4.0 * kPi) * special::legendre_p(l, x.dot(y));
        CHECK(std::abs(lhs - rhs) < 1e-10);
        // kernel evaluator agrees
        const Complex kern = sphere_projection_kernel(l, x.cast<Complex>(), y.cast<Complex>());
        CHECK(std::abs(kern - rhs) < 1e-12);
    }
}

TEST_CASE("highest weight values on the lifted equator") {
    auto highest = Eigendata::sphere_highest(40);
    const double tau = 0.5;
    // p_theta = -tau direction: v = (sin th, -cos th, 0) at x = (cos th, sin th, 0)
    const double th = 0.8;
    TubePoint p = tube_point(Geometry::Sphere, vec3(std::cos(th), std::sin(th), 0.0),
                             vec3(std::sin(th), -std::cos(th), 0.0), tau);
    for (int n : {10, 25, 40}) {
        const double expect =
            highest.highest_weight_constant(n) * std::exp(n * tau);
        CHECK(std::abs(highest.complexified(highest.modes()[n], p)) ==
              doctest::Approx(expect).epsilon(1e-11));
    }
    // the opposite lift direction is exponentially smaller
    TubePoint q = tube_point(Geometry::Sphere, vec3(std::cos(th), std::sin(th), 0.0),
                             vec3(-std::sin(th), std::cos(th), 0.0), tau);
    CHECK(std::abs(highest.complexified(highest.modes()[10], q)) ==
          doctest::Approx(highest.highest_weight_constant(10) * std::exp(-10 * tau))
              .epsilon(1e-11));
}

TEST_CASE("poincare data") {
    // circle
    TubePoint c = tube_point(Geometry::Circle, vec1(0.3), vec1(-1.0), 0.5);
    auto pc = poincare_data(c);
    REQUIRE(pc.has_value());
    CHECK(pc->period == doctest::Approx(kTwoPi));
    CHECK(pc->map->dof() == 0);
    CHECK(pc->tag.kind == symplectic::SpectralClass::Elliptic);

    // torus rational direction (1, 0)
    TubePoint t1 = tube_point(Geometry::Torus, vec2(0, 0), vec2(1, 0), 0.5);
    auto pt = poincare_data(t1);
    REQUIRE(pt.has_value());
    CHECK(pt->period_literal == doctest::Approx(1.0));
    CHECK(pt->period == doctest::Approx(kTwoPi));
    CHECK(pt->parabolic);
    CHECK(pt->tag.kind == symplectic::SpectralClass::NonSemisimple);
    CHECK(pt->lattice(0) == 1);
    CHECK(pt->lattice(1) == 0);

    // torus rational direction (3, 4)/5, primitive
    TubePoint t2 = tube_point(Geometry::Torus, vec2(0, 0), vec2(0.6, 0.8), 0.5);
    auto p2 = poincare_data(t2);
    REQUIRE(p2.has_value());
    CHECK(p2->period_literal == doctest::Approx(5.0));
    CHECK(p2->lattice(0) == 3);
    CHECK(p2->lattice(1) == 4);

    // irrational direction
    const double r = 1.0 / std::sqrt(3.0);
    TubePoint t3 = tube_point(Geometry::Torus, vec2(0, 0), vec2(r, std::sqrt(2.0) * r), 0.5);
    CHECK_FALSE(poincare_data(t3).has_value());

    // sphere
    TubePoint s = tube_point(Geometry::Sphere, vec3(1, 0, 0), vec3(0, 1, 0), 0.5);
    auto ps = poincare_data(s);
    REQUIRE(ps.has_value());
    CHECK(ps->period == doctest::Approx(kTwoPi));
    CHECK(ps->tag.kind == symplectic::SpectralClass::DegenerateElliptic);
    REQUIRE(ps->exponents.size() == 1);
    CHECK(ps->exponents[0] == doctest::Approx(kTwoPi));

    // the generating point is actually periodic under the flow
    TubePoint back = geodesic_flow(t2, p2->period);
    CHECK((back.x - t2.x).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("flat torus q series") {
    Eigen::VectorXi k(2);
    k << 1, 0;
    CHECK(flat_torus_q(k, 0.5, 0.0, 2, 1000) == 0.0);

    // m = 1 reduces to the circle sawtooth partial sums
    Eigen::VectorXi k1(1);
    k1 << 1;
    const double lam = 2.7;
    double direct = 0.0;
    for (long n = 1; n <= 5000; ++n) direct += std::sin(n * lam) / double(n);
    CHECK(flat_torus_q(k1, 0.5, lam, 1, 5000) == doctest::Approx(direct).epsilon(1e-12));

    // m = 2: numerically certified uniform continuity via modulus at small h
    const double h = 1e-3;
    double worst = 0.0;
    for (double l = 10.0; l < 12.0; l += 0.05)
        worst = std::max(worst, std::abs(flat_torus_q(k, 0.5, l + h, 2, 20000) -
                                         flat_torus_q(k, 0.5, l, 2, 20000)));
    // termwise differentiation envelope: sum of |d/dlambda term| bounds
    double envelope = 0.0;
    const double lam_hi = 12.0;
    for (long n = 1; n <= 20000; ++n) {
        const double mod = std::pow(lam_hi / std::hypot(double(n), 1.0), 0.5);
        envelope += mod + 0.5 * std::pow(lam_hi, -0.5) / double(n);
    }
    CHECK(worst <= envelope * h * 1.2);

    CHECK_THROWS_AS(flat_torus_q(Eigen::VectorXi::Zero(2), 0.5, 1.0, 2, 10), DomainError);
}
