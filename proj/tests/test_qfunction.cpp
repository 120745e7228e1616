#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "grauert/qfunction.hpp"
#include "grauert/symplectic.hpp"

using namespace grauert;
using namespace grauert::qfunction;
namespace symp = grauert::symplectic;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

QFunctionSpec hyperbolic_spec(double mu, double period) {
    QFunctionSpec spec;
    spec.period = period;
    spec.coeff = [mu](long n) {
        return std::complex<double>(1.0 / std::sqrt(std::cosh(n * mu)), 0.0);
    };
    spec.summation = TruncatePolicy{};
    spec.tail_bound = [mu](long n) { return std::sqrt(2.0) * std::exp(-0.5 * n * mu); };
    return spec;
}
} // namespace

TEST_CASE("sawtooth") {
    CHECK(sawtooth(0.0) == 0.0);
    CHECK(sawtooth(kTwoPi) == 0.0);
    CHECK(sawtooth(-kPi) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(sawtooth(5.0 + 12 * kTwoPi) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(sawtooth(-0.25) == doctest::Approx(kTwoPi - 0.25).epsilon(1e-15));
}

TEST_CASE("sawtooth partial sums") {
    CHECK(sawtooth_partial_sum(kPi, 100) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sawtooth_partial_sum(0.0, 100) == 0.0);
    // spec-pinned point: at pi/2 the limit is pi/2
    CHECK(std::abs(sawtooth_partial_sum(kPi / 2, 100000) - kPi / 2) < 1e-3);
    // the limit away from jumps is pi - sawtooth(x)
    for (double x : {0.4, 1.3, 2.9, 4.4, 5.9})
        CHECK(std::abs(sawtooth_partial_sum(x, 200000) - (kPi - sawtooth(x))) < 1e-3);
}

TEST_CASE("q_eval basics") {
    QFunctionSpec empty;
    empty.period = kTwoPi;
    CHECK(q_eval(empty, 3.0) == 0.0); // non-periodic branch

    QFunctionSpec hyp = hyperbolic_spec(1.0, kTwoPi);
    CHECK(q_eval(hyp, 0.0) == 0.0); // every term has sin 0

    // elliptic spec with truncation diverges -> convergence error
    QFunctionSpec ell = elliptic_spec(0.0, kTwoPi);
    ell.summation = TruncatePolicy{20000, 1e-10};
    CHECK_THROWS_AS(q_eval(ell, 0.37), ConvergenceError);
}

TEST_CASE("abel sum matches the logarithm closed form at finite r") {
    // sum r^n sin(n y)/n = -arg(1 - r e^{iy}); independent algebraic route.
    const double s0 = 0.5, T = kTwoPi;
    QFunctionSpec spec = elliptic_spec(s0, T);
    const long terms = 100000;
    spec.summation = AbelPolicy{terms, 0.0};
    const double r = 1.0 - 1.0 / double(terms);
    for (double lam : {0.13, 0.4, 0.77}) {
        const double y = lam * T + s0;
        const double expect = -std::arg(1.0 - r * std::polar(1.0, y)) / T;
        CHECK(q_eval(spec, lam) == doctest::Approx(expect).epsilon(1e-7));
    }
}

TEST_CASE("elliptic q matches the sawtooth closed form away from jumps") {
    const double s0 = 0.5, T = kTwoPi;
    QFunctionSpec spec = elliptic_spec(s0, T);
    for (double lam = 0.02; lam < 1.0; lam += 0.017) {
        const double y = sawtooth(lam * T + s0);
        if (std::min(y, kTwoPi - y) < 0.3) continue; // skip jump neighborhoods
        CHECK(std::abs(q_eval(spec, lam) - elliptic_q_closed_form(lam, s0, T)) < 1e-3);
    }
}

TEST_CASE("q_eval periodicity in lambda") {
    QFunctionSpec spec = elliptic_spec(1.2, kTwoPi);
    for (double lam : {0.21, 0.68}) {
        CHECK(q_eval(spec, lam + 1.0) == doctest::Approx(q_eval(spec, lam)).epsilon(1e-9));
    }
    QFunctionSpec hyp = hyperbolic_spec(0.8, 3.0);
    CHECK(q_eval(hyp, 0.4 + kTwoPi / 3.0) == doctest::Approx(q_eval(hyp, 0.4)).epsilon(1e-9));
}

TEST_CASE("detected jumps sit on the series progression with equal heights") {
    const double s0 = 0.5, T = kTwoPi;
    QFunctionSpec spec = elliptic_spec(s0, T);
    auto jumps = detect_jumps(spec, 0.0, 3.0);
    REQUIRE(jumps.size() == 3);
    const double offset = sawtooth(-s0) / T;
    double first_height = jumps[0].height;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        CHECK(std::abs(jumps[k].location - (offset + double(k) * kTwoPi / T)) < 1e-4);
        CHECK(jumps[k].height > 0.0);
        CHECK(std::abs(jumps[k].height - first_height) < 1e-3);
    }
    // jump height approaches the closed-form pi/T as the regularization sharpens
    QFunctionSpec sharp = spec;
    sharp.summation = AbelPolicy{400000, 0.0};
    const double h = 1e-3;
    CHECK(q_eval(sharp, offset + h) - q_eval(sharp, offset - h) ==
          doctest::Approx(kPi / T).epsilon(2e-2));
}

TEST_CASE("classify_continuity") {
    auto rep = classify_continuity(symp::rotation(1.0), kTwoPi);
    CHECK(rep.kind == ContinuityKind::JumpsAt);
    REQUIRE(rep.s0.has_value());
    CHECK(*rep.s0 == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(rep.s0_det.has_value());
    CHECK(*rep.s0_det == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(rep.jumps.has_value());
    CHECK(rep.jumps->gap == doctest::Approx(1.0).epsilon(1e-12));
    // the reported offset is where the regularized series actually jumps
    QFunctionSpec spec = elliptic_spec(*rep.s0, kTwoPi);
    auto jumps = detect_jumps(spec, 0.0, 1.0);
    REQUIRE(jumps.size() == 1);
    CHECK(std::abs(jumps[0].location - rep.jumps->offset) < 1e-4);

    rep = classify_continuity(symp::hyperbolic(1.0), kTwoPi);
    CHECK(rep.kind == ContinuityKind::UniformlyContinuous);

    rep = classify_continuity(symp::loxodromic_block(0.3, 0.4), kTwoPi);
    CHECK(rep.kind == ContinuityKind::UniformlyContinuous);

    Eigen::MatrixXd shear(2, 2);
    shear << 1, 1, 0, 1;
    CHECK_THROWS_AS(classify_continuity(symp::SymplecticMap{shear}, kTwoPi),
                    UnsupportedClassError);
}

TEST_CASE("modulus of continuity") {
    std::vector<double> grid;
    for (double lam = 0.0; lam < 2.0; lam += 0.021) grid.push_back(lam);

    QFunctionSpec hyp = hyperbolic_spec(1.0, kTwoPi);
    // termwise differentiation bound: |Q'| <= sum |G_n| = sum (cosh n mu)^{-1/2}
    double deriv_bound = 0.0;
    for (long n = 1; n <= 200; ++n) deriv_bound += 1.0 / std::sqrt(std::cosh(double(n)));
    const double h = 1e-3;
    CHECK(modulus_of_continuity(hyp, grid, h) <= deriv_bound * h * 1.1);

    QFunctionSpec empty;
    empty.period = kTwoPi;
    CHECK(modulus_of_continuity(empty, grid, h) == 0.0);

    // elliptic: modulus near a jump does not shrink with h
    QFunctionSpec ell = elliptic_spec(0.5, kTwoPi);
    const double jump_loc = sawtooth(-0.5) / kTwoPi;
    std::vector<double> near{jump_loc - 5e-4};
    CHECK(modulus_of_continuity(ell, near, 1e-3) > 0.2);
    CHECK(modulus_of_continuity(ell, near, 2e-3) > 0.2);
}

TEST_CASE("elliptic spectrum enumeration") {
    auto spec = elliptic_spectrum({1.0}, kTwoPi, 2, 3);
    REQUIRE(spec.levels.size() == 3);
    CHECK(spec.levels[0].s == doctest::Approx(0.5));
    CHECK(spec.levels[1].s == doctest::Approx(1.5));
    CHECK(spec.levels[2].s == doctest::Approx(2.5));
    CHECK(spec.levels[0].ground_overlap == 1.0);
    CHECK(spec.levels[1].ground_overlap == 0.0);
    CHECK(spec.lambda_grid[0][1] == doctest::Approx((kTwoPi + 0.5) / kTwoPi));

    auto two = elliptic_spectrum({1.0, std::sqrt(2.0)}, kTwoPi, 1, 0);
    REQUIRE(two.levels.size() == 4);
    const double r2 = std::sqrt(2.0);
    CHECK(two.levels[0].s == doctest::Approx((1.0 + r2) / 2.0));
    CHECK(two.levels[1].s == doctest::Approx((3.0 + r2) / 2.0));
    CHECK(two.levels[2].s == doctest::Approx((1.0 + 3.0 * r2) / 2.0));
    CHECK(two.levels[3].s == doctest::Approx((3.0 + 3.0 * r2) / 2.0));
    for (const auto& level : two.levels) CHECK(level.multiplicity == 1);
}

TEST_CASE("spectral measure reconstruction") {
    // single atom at s0
    const double s0 = 2.2;
    QFunctionSpec ell = elliptic_spec(s0, kTwoPi);
    auto mu = spectral_measure_from_moments(ell, 400, 4096);
    CHECK(mu.mass.sum() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mu.max_window_mass(kTwoPi / 20.0) > 0.9);
    // atom location: peak of the density
    int imax = 0;
    mu.mass.maxCoeff(&imax);
    CHECK(std::abs(mu.theta(imax) - s0) < 0.02);

    // vanishing moments: uniform measure
    QFunctionSpec flat;
    flat.period = kTwoPi;
    flat.coeff = [](long) { return std::complex<double>(0.0, 0.0); };
    mu = spectral_measure_from_moments(flat, 64, 1024);
    CHECK(mu.mass.maxCoeff() == doctest::Approx(mu.mass.minCoeff()).epsilon(1e-10));

    // hyperbolic: spread measure, no narrow window holds half the mass
    QFunctionSpec hyp = hyperbolic_spec(1.0, kTwoPi);
    mu = spectral_measure_from_moments(hyp, 400, 4096);
    CHECK(mu.max_window_mass(kTwoPi / 20.0) < 0.5);
}

TEST_CASE("moment consistency of the reconstruction") {
    QFunctionSpec ell = elliptic_spec(1.1, kTwoPi);
    auto mu = spectral_measure_from_moments(ell, 2000, 8192);
    for (int n = 1; n <= 5; ++n) {
        const std::complex<double> expect = std::polar(1.0, n * 1.1);
        CHECK(std::abs(mu.moment(n) - expect) < 1e-2);
    }
}
