#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "grauert/errors.hpp"
#include "grauert/symplectic.hpp"

namespace grauert::qfunction {

using Complex = std::complex<double>;

// x mod 2pi in [0, 2pi), exact periodic extension.
double sawtooth(double x);

// 2 sum_{n=1}^{N} sin(nx)/n. Converges to pi - sawtooth(x) away from the
// jump points x in 2*pi*Z.
double sawtooth_partial_sum(double x, long n_terms);

struct TruncatePolicy {
    long max_terms = 1000000;
    double tol = 1e-10;
};
struct AbelPolicy {
    long terms = 100000;
    double r = 0.0; // 0 means 1 - 1/terms
};
struct CesaroPolicy {
    long terms = 100000;
};
using SummationPolicy = std::variant<TruncatePolicy, AbelPolicy, CesaroPolicy>;

// Period plus coefficient generator for the oscillating second-term series.
// An empty generator marks a non-periodic point (the series is 0).
struct QFunctionSpec {
    double period = 0.0;
    std::function<Complex(long)> coeff; // n >= 1 -> G_n
    SummationPolicy summation = AbelPolicy{};
    std::function<double(long)> tail_bound; // optional decay envelope

    bool periodic() const { return static_cast<bool>(coeff); }
};

// Regularized sum of Im(e^{i lambda n T} G_n)/(n T) under the spec's policy.
// For real G_n this is the literal sin-series; complex coefficients use the
// symmetrized form with G_{-n} = conj(G_n).
double q_eval(const QFunctionSpec& spec, double lambda);

// Closed form of the Abel limit for unimodular coefficients e^{i n s0}:
// (pi - {lambda T + s0}) / (2 T), jumping upward by pi/T on the progression
// {lambda : s0 + lambda T in 2 pi Z}.
double elliptic_q_closed_form(double lambda, double s0, double period);

enum class ContinuityKind { UniformlyContinuous, JumpsAt };

struct JumpProgression {
    double offset; // smallest nonnegative jump point
    double gap;    // 2 pi / T
};

struct ContinuityReport {
    ContinuityKind kind = ContinuityKind::UniformlyContinuous;
    // Metaplectic total phase (1/2) sum alpha_j in [0, 2pi); present for
    // (degenerate) elliptic maps.
    std::optional<double> s0;
    // arg det P_J S P_J = sum alpha_j mod 2pi, the paper-side normalization.
    std::optional<double> s0_det;
    std::optional<JumpProgression> jumps;
};

// Elliptic (and degenerate elliptic) Poincare maps keep the ground-state atom
// and produce jumps; everything else semi-simple is uniformly continuous.
ContinuityReport classify_continuity(const symplectic::SymplecticMap& S, double period);

// Elliptic coefficient spec e^{i n s0} with the default Abel policy.
QFunctionSpec elliptic_spec(double s0, double period);

// max over the grid of |Q(lambda + h) - Q(lambda)|.
double modulus_of_continuity(const QFunctionSpec& spec, const std::vector<double>& grid,
                             double h);

// Numeric jump detection: scan [lam_lo, lam_hi), then bisect candidate cells;
// a jump is declared when the one-sided values differ by more than
// 10x the summation tolerance.
struct DetectedJump {
    double location;
    double height;
};
std::vector<DetectedJump> detect_jumps(const QFunctionSpec& spec, double lam_lo, double lam_hi,
                                       int scan_points = 2048, double locate_tol = 1e-6);

struct EllipticLevel {
    double s;
    int multiplicity;
    double ground_overlap;
};

struct EllipticSpectrum {
    std::vector<double> alphas;
    std::vector<EllipticLevel> levels;          // sorted by s
    std::vector<std::vector<double>> lambda_grid; // levels x (j_max + 1)
};

// Oscillator levels s_l = sum alpha_j (k_j + 1/2) over |k|_inf <= k_max and
// the progression Lambda_{l,j} = (2 pi j + s_l)/T. Ground level carries
// overlap 1 (non-resonant convention), all others 0.
EllipticSpectrum elliptic_spectrum(const std::vector<double>& alphas, double period,
                                   int k_max, int j_max);

struct DiscreteMeasure {
    Eigen::VectorXd theta; // grid on [0, 2pi)
    Eigen::VectorXd mass;  // nonnegative, sums to ~1

    double max_window_mass(double width) const;
    Complex moment(int n) const;
};

// Fejer-kernel reconstruction of the spectral measure on the circle from the
// moments G_1..G_N (G_0 = 1, G_{-n} = conj G_n).
DiscreteMeasure spectral_measure_from_moments(const QFunctionSpec& spec, int n_moments,
                                              int grid_size);

} // namespace grauert::qfunction
