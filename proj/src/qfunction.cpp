#include "grauert/qfunction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>

#include "grauert/summation.hpp"

namespace grauert::qfunction {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

double sawtooth(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0; // fmod rounding at the boundary
    return r;
}

double sawtooth_partial_sum(double x, long n_terms) {
    NeumaierSum acc;
    for (long n = 1; n <= n_terms; ++n) acc.add(std::sin(n * x) / double(n));
    return 2.0 * acc.value();
}

namespace {

// Weighted series with incremental phase and geometric weight recurrences;
// ratio = 1 gives plain truncation, linear_fade gives the Cesaro weights.
double summed_series(const QFunctionSpec& spec, double lambda, long terms, double ratio,
                     bool linear_fade = false) {
    const double t = spec.period;
    NeumaierSum acc;
    const Complex rot = std::polar(1.0, lambda * t);
    Complex phase = 1.0;
    double w = 1.0;
    const double fade = linear_fade ? 1.0 / (double(terms) + 1.0) : 0.0;
    for (long n = 1; n <= terms; ++n) {
        phase *= rot;
        if ((n & 4095) == 0) phase = std::polar(1.0, lambda * t * double(n)); // refresh drift
        w *= ratio;
        const double weight = linear_fade ? w * (1.0 - double(n) * fade) : w;
        if (weight < 1e-12) break;
        acc.add(weight * (phase * spec.coeff(n)).imag() / (double(n) * t));
    }
    return acc.value();
}

long truncate_horizon(const QFunctionSpec& spec, const TruncatePolicy& pol) {
    if (!spec.tail_bound) return pol.max_terms;
    // Stop once a 4096-term look-ahead window of the envelope contributes
    // less than half the target and the envelope is still decaying.
    const double t = spec.period;
    long n = 1;
    while (n < pol.max_terms) {
        double window = 0.0;
        const long hi = std::min(pol.max_terms, n + 4096);
        for (long k = n + 1; k <= hi; ++k) window += spec.tail_bound(k) / (double(k) * t);
        if (window < 0.5e-10 && spec.tail_bound(hi) <= spec.tail_bound(n)) return hi;
        n = hi;
    }
    return pol.max_terms;
}

} // namespace

double q_eval(const QFunctionSpec& spec, double lambda) {
    if (!spec.periodic()) return 0.0;
    if (spec.period <= 0.0) throw DomainError("q_eval: period must be positive");
    if (lambda < 0.0) throw DomainError("q_eval: lambda must be nonnegative");

    if (const auto* pol = std::get_if<TruncatePolicy>(&spec.summation)) {
        const long horizon = truncate_horizon(spec, *pol);
        const double full = summed_series(spec, lambda, horizon, 1.0);
        const double half = summed_series(spec, lambda, horizon / 2, 1.0);
        if (std::abs(full - half) > std::max(pol->tol, 1e-15) * std::max(1.0, std::abs(full)) &&
            !spec.tail_bound)
            throw ConvergenceError("q_eval: truncated partial sums have not settled");
        return full;
    }
    if (const auto* pol = std::get_if<AbelPolicy>(&spec.summation)) {
        const double r = pol->r > 0.0 ? pol->r : 1.0 - 1.0 / double(pol->terms);
        // Sum until the geometric weight is negligible; stopping at the
        // nominal term count would leave an O(1) bias near jump points.
        const long horizon = static_cast<long>(std::ceil(-27.7 / std::log(r)));
        return summed_series(spec, lambda, horizon, r);
    }
    const auto& pol = std::get<CesaroPolicy>(spec.summation);
    return summed_series(spec, lambda, pol.terms, 1.0, true);
}

double elliptic_q_closed_form(double lambda, double s0, double period) {
    return (kPi - sawtooth(lambda * period + s0)) / (2.0 * period);
}

ContinuityReport classify_continuity(const symplectic::SymplecticMap& S, double period) {
    if (period <= 0.0) throw DomainError("classify_continuity: period must be positive");
    const auto cls = symplectic::classify(S);
    if (!cls.semi_simple())
        throw UnsupportedClassError(
            "classify_continuity: non-semisimple map (flat-torus data is handled separately)");
    ContinuityReport rep;
    using symplectic::SpectralClass;
    if (cls.kind == SpectralClass::Elliptic || cls.kind == SpectralClass::DegenerateElliptic) {
        rep.kind = ContinuityKind::JumpsAt;
        double s0 = 0.0, s0d = 0.0;
        for (double a : cls.alphas) {
            s0 += 0.5 * a;
            s0d += a;
        }
        rep.s0 = sawtooth(s0);
        rep.s0_det = sawtooth(s0d);
        // Jump points of the regularized series: s0 + lambda T in 2 pi Z.
        rep.jumps = JumpProgression{sawtooth(-*rep.s0) / period, kTwoPi / period};
        return rep;
    }
    rep.kind = ContinuityKind::UniformlyContinuous;
    return rep;
}

QFunctionSpec elliptic_spec(double s0, double period) {
    QFunctionSpec spec;
    spec.period = period;
    spec.coeff = [s0](long n) { return std::polar(1.0, double(n) * s0); };
    spec.summation = AbelPolicy{};
    return spec;
}

double modulus_of_continuity(const QFunctionSpec& spec, const std::vector<double>& grid,
                             double h) {
    double worst = 0.0;
    for (double lam : grid) worst = std::max(worst, std::abs(q_eval(spec, lam + h) - q_eval(spec, lam)));
    return worst;
}

std::vector<DetectedJump> detect_jumps(const QFunctionSpec& spec, double lam_lo, double lam_hi,
                                       int scan_points, double locate_tol) {
    std::vector<DetectedJump> out;
    if (!spec.periodic()) return out;
    const double summation_tol = 1e-4;
    const double threshold = 10.0 * summation_tol;

    // Scan with a cheaper Abel radius and cached coefficients, then measure
    // heights with the spec's own policy; the scan radius only needs to
    // resolve the cell size.
    QFunctionSpec scan = spec;
    scan.summation = AbelPolicy{5000, 0.0};
    {
        const double r = 1.0 - 1.0 / 5000.0;
        const long horizon = static_cast<long>(std::ceil(-27.7 / std::log(r)));
        auto buf = std::make_shared<std::vector<Complex>>();
        buf->reserve(horizon);
        for (long n = 1; n <= horizon; ++n) buf->push_back(spec.coeff(n));
        scan.coeff = [buf](long n) {
            return n <= static_cast<long>(buf->size()) ? (*buf)[n - 1] : Complex(0.0);
        };
    }

    const double dx = (lam_hi - lam_lo) / scan_points;
    double prev = q_eval(scan, lam_lo);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = lam_lo + i * dx;
        const double cur = q_eval(scan, x);
        if (std::abs(cur - prev) > threshold) {
            double a = x - dx, b = x;
            double fa = prev;
            while (b - a > locate_tol) {
                const double m = 0.5 * (a + b);
                const double fm = q_eval(scan, m);
                if (std::abs(fm - fa) > 0.5 * std::abs(cur - prev)) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            const double loc = 0.5 * (a + b);
            if (!out.empty() && loc - out.back().location < 2.0 * dx) {
                prev = cur;
                continue; // same transition seen from the neighboring cell
            }
            // Probe far enough out that the Abel smoothing tail and the
            // location error are both negligible against the height.
            const double h = std::max(50.0 * locate_tol, kPi * 1e-4 / spec.period * kTwoPi);
            const double height = q_eval(spec, loc + h) - q_eval(spec, loc - h);
            if (std::abs(height) > threshold) out.push_back({loc, height});
        }
        prev = cur;
    }
    return out;
}

EllipticSpectrum elliptic_spectrum(const std::vector<double>& alphas, double period,
                                   int k_max, int j_max) {
    for (double a : alphas)
        if (!(a > 0.0 && a < kTwoPi))
            throw DomainError("elliptic_spectrum: exponents must lie in (0, 2pi)");
    if (k_max < 0 || j_max < 0)
        throw DomainError("elliptic_spectrum: k_max and j_max must be nonnegative");

    EllipticSpectrum spec;
    spec.alphas = alphas;
    const int d = static_cast<int>(alphas.size());

    // Enumerate multi-indices |k|_inf <= k_max; collapse equal levels.
    std::map<double, std::pair<int, bool>> levels; // s -> (multiplicity, contains k = 0)
    std::vector<int> k(d, 0);
    const long total = static_cast<long>(std::pow(double(k_max + 1), d));
    for (long it = 0; it < total; ++it) {
        long rem = it;
        bool ground = true;
        double s = 0.0;
        for (int j = 0; j < d; ++j) {
            k[j] = static_cast<int>(rem % (k_max + 1));
            rem /= (k_max + 1);
            if (k[j] != 0) ground = false;
            s += alphas[j] * (k[j] + 0.5);
        }
        bool merged = false;
        for (auto& [s_existing, info] : levels) {
            if (std::abs(s_existing - s) < 1e-12) {
                info.first += 1;
                info.second = info.second || ground;
                merged = true;
                break;
            }
        }
        if (!merged) levels[s] = {1, ground};
    }
    if (d == 0) levels[0.0] = {1, true};

    for (const auto& [s, info] : levels) {
        spec.levels.push_back({s, info.first, info.second ? 1.0 : 0.0});
        std::vector<double> row;
        row.reserve(j_max + 1);
        for (int j = 0; j <= j_max; ++j) row.push_back((kTwoPi * j + s) / period);
        spec.lambda_grid.push_back(std::move(row));
    }
    return spec;
}

double DiscreteMeasure::max_window_mass(double width) const {
    const int n = static_cast<int>(theta.size());
    if (n == 0) return 0.0;
    const double dtheta = kTwoPi / n;
    const int w = std::max(1, static_cast<int>(std::lround(width / dtheta)));
    // circular sliding window
    double best = 0.0;
    double window = 0.0;
    for (int i = 0; i < w; ++i) window += mass(i % n);
    best = window;
    for (int i = 0; i < n; ++i) {
        window -= mass(i);
        window += mass((i + w) % n);
        best = std::max(best, window);
    }
    return best;
}

Complex DiscreteMeasure::moment(int n) const {
    Complex acc = 0.0;
    for (int i = 0; i < theta.size(); ++i) acc += std::polar(mass(i), n * theta(i));
    return acc;
}

DiscreteMeasure spectral_measure_from_moments(const QFunctionSpec& spec, int n_moments,
                                              int grid_size) {
    DiscreteMeasure out;
    out.theta = Eigen::VectorXd::Zero(grid_size);
    out.mass = Eigen::VectorXd::Zero(grid_size);
    std::vector<Complex> g(n_moments + 1);
    g[0] = 1.0;
    for (int n = 1; n <= n_moments; ++n) g[n] = spec.periodic() ? spec.coeff(n) : Complex(0.0);
    const double dtheta = kTwoPi / grid_size;
    for (int i = 0; i < grid_size; ++i) {
        const double th = i * dtheta;
        // Fejer weights give a nonnegative density.
        double density = 1.0;
        for (int n = 1; n <= n_moments; ++n) {
            const double w = 1.0 - double(n) / (n_moments + 1.0);
            density += 2.0 * w * (g[n] * std::polar(1.0, -n * th)).real();
        }
        density /= kTwoPi;
        out.theta(i) = th;
        out.mass(i) = std::max(0.0, density) * dtheta;
    }
    return out;
}

} // namespace grauert::qfunction
