#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "grauert/beams.hpp"

using namespace grauert;
using namespace grauert::beams;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXcd sphere_y0(int d) {
    return Eigen::MatrixXcd::Identity(d, d) / std::sqrt(2.0);
}
Eigen::MatrixXcd sphere_ydot0(int d) {
    return Complex(0.0, 1.0) * Eigen::MatrixXcd::Identity(d, d) / std::sqrt(2.0);
}
} // namespace

TEST_CASE("sphere frame: Y = e^{is}/sqrt(2), Gamma = iI") {
    auto sol = integrate_jacobi(constant_curvature(1.0), kTwoPi, sphere_y0(1), sphere_ydot0(1),
                                4096);
    CHECK(sol.wronskian_drift < 1e-10);
    for (std::size_t i = 0; i < sol.s.size(); i += 512) {
        const Complex expect = std::polar(1.0 / std::sqrt(2.0), sol.s[i]);
        CHECK(std::abs(sol.y[i](0, 0) - expect) < 1e-10);
    }
    auto gammas = riccati_gamma(sol);
    for (const auto& g : gammas) CHECK(std::abs(g(0, 0) - Complex(0.0, 1.0)) < 1e-10);
    CHECK(gamma_identity_error(sol) < 1e-10);
    // det arg advances by exactly L over the loop
    CHECK(sol.det_arg.back() - sol.det_arg.front() == doctest::Approx(kTwoPi).epsilon(1e-10));
}

TEST_CASE("flat case: Y = Y0 + s Ydot0") {
    auto sol = integrate_jacobi(constant_curvature(0.0), 3.0, sphere_y0(2), sphere_ydot0(2), 512);
    Eigen::MatrixXcd y, v;
    sol.interpolate(2.0, y, v);
    const Eigen::MatrixXcd expect = sphere_y0(2) + 2.0 * sphere_ydot0(2);
    CHECK((y - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((v - sphere_ydot0(2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("wronskian drift and Richardson order for a perturbed profile") {
    const auto curv = perturbed_sphere(0.1, 1, kTwoPi);
    auto sol = integrate_jacobi(curv, kTwoPi, sphere_y0(1), sphere_ydot0(1), 10000);
    CHECK(sol.wronskian_drift < 1e-8);
    // fourth-order convergence: halving the step shrinks the endpoint error ~16x
    auto coarse = integrate_jacobi(curv, kTwoPi, sphere_y0(1), sphere_ydot0(1), 200);
    auto fine = integrate_jacobi(curv, kTwoPi, sphere_y0(1), sphere_ydot0(1), 400);
    auto finest = integrate_jacobi(curv, kTwoPi, sphere_y0(1), sphere_ydot0(1), 800);
    const double e1 = std::abs(coarse.y.back()(0, 0) - finest.y.back()(0, 0));
    const double e2 = std::abs(fine.y.back()(0, 0) - finest.y.back()(0, 0));
    CHECK(e1 / e2 > 10.0); // ~16 for clean fourth order
    // Riccati residual within the finite-difference budget
    CHECK(riccati_residual(sol) < 1e-6 * 1.1);
    CHECK(gamma_identity_error(sol) < 1e-8);

    // bad initial data is rejected
    CHECK_THROWS_AS(
        integrate_jacobi(curv, kTwoPi, sphere_y0(1), 2.0 * sphere_ydot0(1), 256),
        DomainError);
}

TEST_CASE("gamma is invariant under constant right factors") {
    // columns can be recombined: Y -> Y M leaves Gamma unchanged
    const auto curv = perturbed_sphere(0.05, 2, kTwoPi);
    auto sol = integrate_jacobi(curv, kTwoPi, sphere_y0(2), sphere_ydot0(2), 2048);
    Eigen::MatrixXcd m(2, 2);
    m << Complex(1.0, 0.3), Complex(0.2, -0.1), Complex(0.0, 0.4), Complex(0.9, 0.0);
    auto sol2 = sol;
    for (std::size_t i = 0; i < sol2.y.size(); ++i) {
        sol2.y[i] = sol.y[i] * m;
        sol2.ydot[i] = sol.ydot[i] * m;
    }
    auto g1 = riccati_gamma(sol);
    auto g2 = riccati_gamma(sol2);
    for (std::size_t i = 0; i < g1.size(); i += 256)
        CHECK((g1[i] - g2[i]).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("monodromy classification") {
    // K = 1, L = 2 pi: identity (degenerate)
    auto m1 = poincare_from_jacobi(constant_curvature(1.0), kTwoPi, 1, 4096);
    CHECK((m1.map.matrix() - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(m1.tag.kind == symplectic::SpectralClass::DegenerateElliptic);

    // K = 1, L = pi: rotation by pi (monodromy -I)
    auto m2 = poincare_from_jacobi(constant_curvature(1.0), kPi, 1, 4096);
    CHECK((m2.map.matrix() + Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9);

    // stable Mathieu window: K = 2 + 0.1 cos(2s) is elliptic with |eig| = 1
    const auto stable = [](Complex s) { return 2.0 + 0.1 * std::cos(2.0 * s); };
    auto m3 = poincare_from_jacobi(stable, kTwoPi, 1, 8192);
    CHECK(symplectic::check_symplectic(m3.map.matrix(), 1e-8));
    REQUIRE(m3.tag.kind == symplectic::SpectralClass::Elliptic);
    Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXd>(m3.map.matrix()).eigenvalues();
    for (int i = 0; i < ev.size(); ++i) CHECK(std::abs(std::abs(ev(i)) - 1.0) < 1e-8);

    // the resonant profile K = 1 + 0.1 cos(2s) sits in the primary instability
    // tongue: hyperbolic-type monodromy, |trace| > 2
    auto m4 = poincare_from_jacobi(perturbed_sphere(0.1, 2, kTwoPi), kTwoPi, 1, 8192);
    CHECK(std::abs(m4.map.matrix().trace()) > 2.0);
    CHECK(m4.tag.kind != symplectic::SpectralClass::Elliptic);
}

TEST_CASE("floquet frame reproduces the sphere oracle and stable profiles") {
    auto frame = floquet_frame(constant_curvature(1.0), 1.0, 1, 2048);
    // K = 1, L = 1: multiplier e^{i}, frame (1, i)/sqrt(2) up to phase
    REQUIRE(frame.alphas.size() == 1);
    CHECK(frame.alphas[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(frame.ydot0(0, 0) / frame.y0(0, 0) - Complex(0.0, 1.0)) < 1e-8);

    const auto stable = [](Complex s) { return 2.0 + 0.1 * std::cos(2.0 * s); };
    auto f2 = floquet_frame(stable, kTwoPi, 1, 8192);
    auto sol = integrate_jacobi(stable, kTwoPi, f2.y0, f2.ydot0, 8192);
    CHECK(sol.wronskian_drift < 1e-8);
    // Floquet property: Y(L) = e^{i alpha} Y(0)
    const Complex ratio = sol.y.back()(0, 0) / sol.y.front()(0, 0);
    CHECK(std::abs(ratio - std::polar(1.0, f2.alphas[0])) < 1e-7);

    CHECK_THROWS_AS(floquet_frame(perturbed_sphere(0.1, 2, kTwoPi), kTwoPi, 1, 2048),
                    UnsupportedClassError);
}

TEST_CASE("beam quantization and evaluation on the sphere") {
    const int n = 40;
    auto sol = integrate_jacobi(constant_curvature(1.0), kTwoPi, sphere_y0(1), sphere_ydot0(1),
                                8192);
    auto spec = make_beam(std::move(sol), n);
    CHECK(spec.alpha_path_sum == doctest::Approx(kTwoPi).epsilon(1e-10));
    CHECK(spec.r == doctest::Approx(n + 0.5).epsilon(1e-10));

    // |beam| is s-independent on the axis
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(1);
    const double v0 = std::abs(beam_eval(spec, 0.1, y0));
    for (double s : {0.9, 2.2, 4.7})
        CHECK(std::abs(beam_eval(spec, s, y0)) == doctest::Approx(v0).epsilon(1e-9));

    // transverse Gaussian decay: |beam(s, y)|/|beam(s, 0)| = e^{-r |y|^2 / 2}
    Eigen::VectorXd y(1);
    y << 0.3 / std::sqrt(spec.r);
    const double ratio = std::abs(beam_eval(spec, 1.0, y)) / v0;
    CHECK(ratio == doctest::Approx(std::exp(-0.5 * spec.r * y(0) * y(0))).epsilon(1e-9));

    // outside the validity tube
    Eigen::VectorXd far(1);
    far << 6.0 / std::sqrt(spec.r);
    CHECK_THROWS_AS(beam_eval(spec, 1.0, far), DomainError);

    // L2 normalization over the tube: numeric check of the closed form
    const int ns = 200, ny = 400;
    double acc = 0.0;
    const double ylim = 5.0 / std::sqrt(spec.r);
    for (int i = 0; i < ns; ++i) {
        const double s = kTwoPi * i / ns;
        for (int j = 0; j <= ny; ++j) {
            const double yy = -ylim + 2.0 * ylim * j / ny;
            Eigen::VectorXd yv(1);
            yv << yy;
            const double w = (j == 0 || j == ny) ? 0.5 : 1.0;
            acc += w * std::norm(beam_eval(spec, s, yv));
        }
    }
    acc *= (kTwoPi / ns) * (2.0 * ylim / ny);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("beam single-valuedness around the loop") {
    // integrate two loops; quantize on the primitive period; the value at
    // s + L equals the value at s because r absorbs the branch monodromy
    const int n = 17;
    auto sol = integrate_jacobi(constant_curvature(1.0), 2.0 * kTwoPi, sphere_y0(1),
                                sphere_ydot0(1), 16384);
    auto spec = make_beam(std::move(sol), n, kTwoPi);
    Eigen::VectorXd y(1);
    y << 0.1 / std::sqrt(spec.r);
    for (double s : {0.4, 1.7, 3.0}) {
        const Complex a = beam_eval(spec, s, y);
        const Complex b = beam_eval(spec, s + kTwoPi, y);
        CHECK(std::abs(a - b) < 1e-8 * std::abs(a));
    }
}

TEST_CASE("complexified beam growth") {
    const int n = 30;
    const double tau = 0.4;
    auto sol = integrate_jacobi(constant_curvature(1.0), kTwoPi, sphere_y0(1), sphere_ydot0(1),
                                8192);
    auto spec = make_beam(std::move(sol), n);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(1);

    // sigma = 0 reduces to the real beam
    const Complex real_val = beam_eval(spec, 1.3, z);
    const Complex cont = beam_complexify(spec, 1.3, 0.0, z, z);
    CHECK(std::abs(real_val - cont) < 1e-10 * std::abs(real_val));

    // closed form on the sphere: Y(s + i sigma) = e^{i(s + i sigma)}/sqrt(2)
    const Complex down = beam_complexify(spec, 0.7, -tau, z, z);
    const double expect = spec.norm * std::pow(2.0, 0.25) * std::exp(spec.r * tau) *
                          std::exp(-0.5 * tau); // |det Y|^{-1/2} = 2^{1/4} e^{sigma/2}
    CHECK(std::abs(down) == doctest::Approx(expect).epsilon(1e-8));

    // growth flips under sigma -> -sigma: ratio e^{-2 r tau} in the phase
    // factor times the (small) det correction e^{-tau}
    const Complex up = beam_complexify(spec, 0.7, tau, z, z);
    CHECK(std::abs(up) / std::abs(down) ==
          doctest::Approx(std::exp(-2.0 * spec.r * tau) * std::exp(tau)).epsilon(1e-8));
}

TEST_CASE("monodromy is symplectic for generic stable profiles") {
    const auto curv = [](Complex s) { return 2.3 + 0.07 * std::cos(2.0 * s) + 0.05 * std::cos(4.0 * s); };
    auto m = poincare_from_jacobi(curv, kTwoPi, 2, 8192);
    CHECK(symplectic::check_symplectic(m.map.matrix(), 1e-8));
}
