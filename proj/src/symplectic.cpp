#include "grauert/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace grauert::symplectic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string matrix_to_string(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    os << m;
    return os.str();
}

} // namespace

Eigen::MatrixXd standard_form(int dof) {
    Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * dof, 2 * dof);
    om.topRightCorner(dof, dof) = Eigen::MatrixXd::Identity(dof, dof);
    om.bottomLeftCorner(dof, dof) = -Eigen::MatrixXd::Identity(dof, dof);
    return om;
}

Eigen::MatrixXd standard_complex_structure(int dof) { return standard_form(dof); }

bool check_symplectic(const Eigen::MatrixXd& m, double tol) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw DimensionError("check_symplectic: matrix must be square of even size");
    if (m.rows() == 0) return true;
    const int d = static_cast<int>(m.rows()) / 2;
    const Eigen::MatrixXd om = standard_form(d);
    return (m.transpose() * om * m - om).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMap::SymplecticMap(Eigen::MatrixXd m, double tol) : m_(std::move(m)), tol_(tol) {
    if (m_.rows() != m_.cols() || m_.rows() % 2 != 0)
        throw DimensionError("SymplecticMap: matrix must be square of even size");
    d_ = static_cast<int>(m_.rows()) / 2;
    if (d_ == 0) return;
    if (!check_symplectic(m_, tol_))
        throw DomainError("SymplecticMap: S^T Omega S != Omega within tol\n" +
                          matrix_to_string(m_));
    if (std::abs(m_.determinant() - 1.0) > std::max(tol_, 1e-8 * std::pow(m_.norm(), 2 * d_)))
        throw DomainError("SymplecticMap: det != 1 within tol");
}

SymplecticMap SymplecticMap::inverse() const {
    if (d_ == 0) return *this;
    // S^{-1} = Omega^{-1} S^T Omega, exact up to products.
    const Eigen::MatrixXd om = standard_form(d_);
    return SymplecticMap(-om * m_.transpose() * om, tol_);
}

SymplecticMap SymplecticMap::power(long n) const {
    if (d_ == 0) return *this;
    Eigen::MatrixXd base = n >= 0 ? m_ : inverse().matrix();
    unsigned long k = static_cast<unsigned long>(n >= 0 ? n : -n);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(2 * d_, 2 * d_);
    while (k) {
        if (k & 1ul) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    // matrix products lose symplecticity at the eps * ||S||^2 level
    const double tol = std::max(tol_, 1e-13 * (1.0 + acc.squaredNorm()));
    return SymplecticMap(std::move(acc), tol);
}

Eigen::MatrixXd SymplecticMap::fractional_power(double t) const {
    if (d_ == 0) return m_;
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(m_);
    if (es.info() != Eigen::Success)
        throw NumericError("fractional_power: eigen solver failed\n" + matrix_to_string(m_));
    const Eigen::VectorXcd lam = es.eigenvalues();
    const Eigen::MatrixXcd v = es.eigenvectors();
    Eigen::VectorXcd powed(lam.size());
    for (int i = 0; i < lam.size(); ++i) powed(i) = std::exp(t * std::log(lam(i)));
    const Eigen::MatrixXcd st = v * powed.asDiagonal() * v.inverse();
    return st.real();
}

SymplecticMap rotation(double alpha) {
    Eigen::MatrixXd m(2, 2);
    m << std::cos(alpha), -std::sin(alpha), std::sin(alpha), std::cos(alpha);
    return SymplecticMap(std::move(m));
}

SymplecticMap hyperbolic(double mu) {
    Eigen::MatrixXd m(2, 2);
    m << std::exp(mu), 0.0, 0.0, std::exp(-mu);
    return SymplecticMap(std::move(m));
}

SymplecticMap loxodromic_block(double a, double b) {
    Eigen::MatrixXd r(2, 2);
    r << std::cos(b), std::sin(b), -std::sin(b), std::cos(b);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m.topLeftCorner(2, 2) = std::exp(a) * r;
    m.bottomRightCorner(2, 2) = std::exp(-a) * r;
    return SymplecticMap(std::move(m));
}

SymplecticMap direct_sum(const SymplecticMap& s1, const SymplecticMap& s2) {
    const int d1 = s1.dof(), d2 = s2.dof(), d = d1 + d2;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    m.block(0, 0, d1, d1) = s1.block_a();
    m.block(0, d, d1, d1) = s1.block_b();
    m.block(d, 0, d1, d1) = s1.block_c();
    m.block(d, d, d1, d1) = s1.block_d();
    m.block(d1, d1, d2, d2) = s2.block_a();
    m.block(d1, d + d1, d2, d2) = s2.block_b();
    m.block(d + d1, d1, d2, d2) = s2.block_c();
    m.block(d + d1, d + d1, d2, d2) = s2.block_d();
    return SymplecticMap(std::move(m), std::max(s1.tol(), s2.tol()));
}

const char* to_string(SpectralClass c) {
    switch (c) {
        case SpectralClass::Elliptic: return "elliptic";
        case SpectralClass::HyperbolicPositive: return "hyperbolic-positive";
        case SpectralClass::Loxodromic: return "loxodromic";
        case SpectralClass::DegenerateElliptic: return "degenerate-elliptic";
        case SpectralClass::NonSemisimple: return "non-semisimple";
        case SpectralClass::Mixed: return "mixed";
    }
    return "?";
}

namespace {

// Krein form i * conj(v)^T Omega v; positive for the eigenvalue whose
// exponent carries the metaplectic phase.
double krein_sign(const Eigen::MatrixXd& om, const Eigen::VectorXcd& v) {
    const Complex w = (v.adjoint() * om.cast<Complex>() * v)(0, 0);
    return (Complex(0.0, 1.0) * w).real();
}

} // namespace

Classification classify(const SymplecticMap& S, double tol_scale) {
    Classification out;
    if (S.dof() == 0) {
        out.kind = SpectralClass::Elliptic;
        out.eigenvector_condition = 1.0;
        return out;
    }
    const double tol = tol_scale * (1.0 + S.matrix().norm());
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(S.matrix());
    if (es.info() != Eigen::Success)
        throw NumericError("classify: eigen solver failed on\n" + matrix_to_string(S.matrix()));
    const Eigen::VectorXcd lam = es.eigenvalues();
    const Eigen::MatrixXcd vecs = es.eigenvectors();

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vecs);
    const double smin = svd.singularValues().minCoeff();
    out.eigenvector_condition =
        smin > 0.0 ? svd.singularValues().maxCoeff() / smin : std::numeric_limits<double>::infinity();
    if (!(out.eigenvector_condition < 1e8)) {
        out.kind = SpectralClass::NonSemisimple;
        return out;
    }

    const int n = static_cast<int>(lam.size());
    const Eigen::MatrixXd om = standard_form(S.dof());
    std::vector<bool> used(n, false);
    bool all_unit = true, all_real_positive = true, any_pm1 = false;

    for (int i = 0; i < n; ++i) {
        const Complex l = lam(i);
        if (std::abs(std::abs(l) - 1.0) > tol) all_unit = false;
        if (std::abs(l.imag()) > tol || l.real() <= tol) all_real_positive = false;
        if (std::abs(l - 1.0) <= tol || std::abs(l + 1.0) <= tol) any_pm1 = true;
    }

    auto push_elliptic_pair = [&](int i) {
        // Pick the Krein-positive member of the pair {l, conj l}.
        const Complex l = lam(i);
        double a = std::arg(l);
        if (krein_sign(om, vecs.col(i)) < 0.0) a = -a;
        if (a <= 0.0) a += kTwoPi;
        out.alphas.push_back(a);
    };

    if (all_unit && !any_pm1) {
        out.kind = SpectralClass::Elliptic;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            used[i] = true;
            // mark the conjugate partner
            int best = -1;
            double dist = 1e300;
            for (int j = 0; j < n; ++j)
                if (!used[j] && std::abs(lam(j) - std::conj(lam(i))) < dist) {
                    dist = std::abs(lam(j) - std::conj(lam(i)));
                    best = j;
                }
            if (best >= 0) used[best] = true;
            push_elliptic_pair(i);
        }
        std::sort(out.alphas.begin(), out.alphas.end());
        return out;
    }
    if (all_unit) {
        out.kind = SpectralClass::DegenerateElliptic;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            const Complex l = lam(i);
            if (std::abs(l - 1.0) <= tol || std::abs(l + 1.0) <= tol) {
                used[i] = true;
                continue;
            }
            used[i] = true;
            int best = -1;
            double dist = 1e300;
            for (int j = 0; j < n; ++j)
                if (!used[j] && std::abs(lam(j) - std::conj(lam(i))) < dist) {
                    dist = std::abs(lam(j) - std::conj(lam(i)));
                    best = j;
                }
            if (best >= 0) used[best] = true;
            push_elliptic_pair(i);
        }
        std::sort(out.alphas.begin(), out.alphas.end());
        return out;
    }
    if (all_real_positive) {
        bool any_unit = false;
        for (int i = 0; i < n; ++i)
            if (std::abs(lam(i).real() - 1.0) <= tol) any_unit = true;
        if (!any_unit) {
            out.kind = SpectralClass::HyperbolicPositive;
            for (int i = 0; i < n; ++i)
                if (lam(i).real() > 1.0) out.mus.push_back(std::log(lam(i).real()));
            std::sort(out.mus.begin(), out.mus.end());
            return out;
        }
    }

    // Group into quadruples / pairs and tag each block.
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        const Complex l = lam(i);
        used[i] = true;
        auto claim_nearest = [&](Complex target) {
            int best = -1;
            double dist = 1e300;
            for (int j = 0; j < n; ++j)
                if (!used[j] && std::abs(lam(j) - target) < dist) {
                    dist = std::abs(lam(j) - target);
                    best = j;
                }
            if (best >= 0) used[best] = true;
            return best;
        };
        const bool unit = std::abs(std::abs(l) - 1.0) <= tol;
        const bool real = std::abs(l.imag()) <= tol;
        if (unit && !real) {
            claim_nearest(std::conj(l));
            push_elliptic_pair(i);
            out.block_kinds.push_back(std::abs(l - 1.0) <= tol || std::abs(l + 1.0) <= tol
                                          ? SpectralClass::DegenerateElliptic
                                          : SpectralClass::Elliptic);
        } else if (unit) {
            claim_nearest(l); // the collapsed +-1 partner
            out.block_kinds.push_back(SpectralClass::DegenerateElliptic);
        } else if (real && l.real() > 0.0) {
            claim_nearest(Complex(1.0 / l.real(), 0.0));
            out.mus.push_back(std::abs(std::log(l.real())));
            out.block_kinds.push_back(SpectralClass::HyperbolicPositive);
        } else if (real) {
            claim_nearest(Complex(1.0 / l.real(), 0.0));
            out.block_kinds.push_back(SpectralClass::Mixed); // negative-real pair
        } else {
            // genuine quadruple {l, conj l, 1/l, 1/conj l}
            claim_nearest(std::conj(l));
            claim_nearest(1.0 / l);
            claim_nearest(1.0 / std::conj(l));
            const bool lox = std::abs(l.real()) > tol;
            out.lox.push_back({std::abs(std::arg(l)), std::abs(std::log(std::abs(l)))});
            out.block_kinds.push_back(lox ? SpectralClass::Loxodromic : SpectralClass::Mixed);
        }
    }
    bool all_lox = !out.block_kinds.empty();
    for (SpectralClass k : out.block_kinds)
        if (k != SpectralClass::Loxodromic) all_lox = false;
    out.kind = all_lox ? SpectralClass::Loxodromic : SpectralClass::Mixed;
    std::sort(out.mus.begin(), out.mus.end());
    std::sort(out.alphas.begin(), out.alphas.end());
    return out;
}

Eigen::MatrixXcd holomorphic_block(const SymplecticMap& S) {
    const Complex i(0.0, 1.0);
    return 0.5 * ((S.block_a() + S.block_d()).cast<Complex>() +
                  i * (S.block_c() - S.block_b()).cast<Complex>());
}

std::pair<SymplecticMap, SymplecticMap> polar_decompose(const SymplecticMap& S) {
    const int d = S.dof();
    if (d == 0) return {S, S};
    const Eigen::MatrixXd g = S.matrix().transpose() * S.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    if (es.info() != Eigen::Success)
        throw NumericError("polar_decompose: eigen solver failed");
    const Eigen::MatrixXd phat = es.operatorSqrt();
    const Eigen::MatrixXd u = S.matrix() * phat.inverse();
    return {SymplecticMap(u, std::max(S.tol(), 1e-9)),
            SymplecticMap(phat, std::max(S.tol(), 1e-9))};
}

namespace {

// det(A + D + i(B - C)) together with a singularity guard.
Complex blockdet_inner(const SymplecticMap& S) {
    if (S.dof() == 0) return Complex(1.0, 0.0);
    const Complex i(0.0, 1.0);
    const Eigen::MatrixXcd m = (S.block_a() + S.block_d()).cast<Complex>() +
                               i * (S.block_b() - S.block_c()).cast<Complex>();
    const Complex det = m.determinant();
    const double scale = std::max(1.0, std::pow(m.norm(), S.dof()));
    if (std::abs(det) <= 1e-12 * scale)
        throw SingularConfigError("matrix element: det(A + D + i(B - C)) vanishes");
    return det;
}

Complex inner_at(const Eigen::MatrixXd& st) {
    const int d = static_cast<int>(st.rows()) / 2;
    const Complex i(0.0, 1.0);
    const Eigen::MatrixXcd m = (st.topLeftCorner(d, d) + st.bottomRightCorner(d, d)).cast<Complex>() +
                               i * (st.topRightCorner(d, d) - st.bottomLeftCorner(d, d)).cast<Complex>();
    return m.determinant();
}

} // namespace

MatrixElementValue matrix_element_blockdet(const SymplecticMap& S) {
    const Complex det = blockdet_inner(S);
    const Complex val = std::pow(2.0, 0.5 * S.dof()) / std::sqrt(det);
    return {val, 0, MatrixElementMethod::BlockDet};
}

MatrixElementValue matrix_element_keyid(const SymplecticMap& S) {
    if (S.dof() == 0) return {Complex(1.0, 0.0), 0, MatrixElementMethod::KeyId};
    const int d = S.dof();
    const Complex i(0.0, 1.0);
    const Eigen::MatrixXcd j = standard_complex_structure(d).cast<Complex>();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(2 * d, 2 * d);
    const Eigen::MatrixXcd m = eye + i * j + S.matrix().cast<Complex>() * (eye - i * j);
    const Complex det = m.determinant();
    const double scale = std::max(1.0, std::pow(m.norm(), d));
    if (std::abs(det) <= 1e-12 * scale)
        throw SingularConfigError("matrix element: det(I + iJ + S(I - iJ)) vanishes");
    const Complex val = std::pow(2.0, double(d)) / std::sqrt(det);
    return {val, 0, MatrixElementMethod::KeyId};
}

double matrix_element_magnitude(const SymplecticMap& S) {
    if (S.dof() == 0) return 1.0;
    const int n = 2 * S.dof();
    const Eigen::MatrixXd g =
        Eigen::MatrixXd::Identity(n, n) + S.matrix().transpose() * S.matrix();
    // log-space determinant through Cholesky; g is SPD.
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
        throw NumericError("matrix_element_magnitude: Cholesky failed");
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) logdet += std::log(llt.matrixL()(i, i));
    logdet *= 2.0;
    return std::exp(0.5 * S.dof() * std::log(2.0) - 0.25 * logdet);
}

double matrix_element_gaussian_oracle(const SymplecticMap& S, double levi_scale) {
    if (levi_scale <= 0.0)
        throw DomainError("matrix_element_gaussian_oracle: levi_scale must be positive");
    if (S.dof() == 0) return 1.0;
    const int n = 2 * S.dof();
    auto log_gaussian = [&](const Eigen::MatrixXd& s) {
        // log of int exp(-(|u|^2 + |s u|^2)/tau) du = (n/2) log(pi tau) - (1/2) log det(I + s^T s)
        const Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n) + s.transpose() * s;
        Eigen::LLT<Eigen::MatrixXd> llt(g);
        if (llt.info() != Eigen::Success)
            throw NumericError("matrix_element_gaussian_oracle: Cholesky failed");
        double logdet = 0.0;
        for (int i = 0; i < n; ++i) logdet += std::log(llt.matrixL()(i, i));
        return 0.5 * n * std::log(kPi * levi_scale) - logdet;
    };
    const double log_ratio =
        log_gaussian(S.matrix()) - log_gaussian(Eigen::MatrixXd::Identity(n, n));
    return std::exp(0.5 * log_ratio);
}

TrackedDet tracked_blockdet(const SymplecticMap& S, double t_end) {
    if (S.dof() == 0) return {0.0, 1.0, 0};
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(S.matrix());
    if (es.info() != Eigen::Success)
        throw NumericError("tracked_blockdet: eigen solver failed");
    const Eigen::VectorXcd lam = es.eigenvalues();
    const Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::MatrixXcd vinv = v.inverse();
    Eigen::VectorXcd loglam(lam.size());
    for (int i = 0; i < lam.size(); ++i) loglam(i) = std::log(lam(i));

    auto inner = [&](double t) {
        Eigen::VectorXcd p(lam.size());
        for (int i = 0; i < lam.size(); ++i) p(i) = std::exp(t * loglam(i));
        const Eigen::MatrixXd st = (v * p.asDiagonal() * vinv).real();
        return inner_at(st);
    };

    int steps = std::max(16, static_cast<int>(std::ceil(std::abs(t_end) * 8)));
    for (;;) {
        const double dt = t_end / steps;
        double arg = 0.0; // inner(0) = 2^d, argument 0
        Complex prev = inner(0.0);
        bool ok = true;
        for (int k = 1; k <= steps; ++k) {
            const Complex cur = inner(k * dt);
            if (std::abs(cur) == 0.0) throw SingularConfigError("tracked_blockdet: caustic");
            const double step = std::arg(cur / prev);
            if (std::abs(step) >= kPi / 2.0) {
                ok = false;
                break;
            }
            arg += step;
            prev = cur;
        }
        if (ok) {
            const double principal = std::arg(prev);
            const int winding =
                static_cast<int>(std::lround((arg - principal) / kTwoPi));
            return {arg, std::abs(prev), winding};
        }
        steps *= 2;
        if (steps > (1 << 22))
            throw ConvergenceError("tracked_blockdet: step refinement did not settle");
    }
}

std::vector<MatrixElementValue> power_sequence(const SymplecticMap& S, int n_max) {
    const Classification cls = classify(S);
    if (!cls.semi_simple())
        throw UnsupportedClassError(
            "power_sequence: non-semisimple input (parabolic data is handled by the geometry module)");
    std::vector<MatrixElementValue> out;
    out.reserve(n_max);
    const Complex i(0.0, 1.0);
    if (cls.kind == SpectralClass::Elliptic || cls.kind == SpectralClass::DegenerateElliptic) {
        double s0 = 0.0;
        for (double a : cls.alphas) s0 += 0.5 * a;
        for (int n = 1; n <= n_max; ++n)
            out.push_back({std::exp(i * (n * s0)), 0, MatrixElementMethod::BlockDet});
        return out;
    }
    if (cls.kind == SpectralClass::HyperbolicPositive) {
        for (int n = 1; n <= n_max; ++n) {
            double v = 1.0;
            for (double mu : cls.mus) v /= std::sqrt(std::cosh(n * mu));
            out.push_back({Complex(v, 0.0), 0, MatrixElementMethod::BlockDet});
        }
        return out;
    }
    for (int n = 1; n <= n_max; ++n) {
        const TrackedDet td = tracked_blockdet(S, double(n));
        const Complex val = std::pow(2.0, 0.5 * S.dof()) / std::sqrt(td.abs) *
                            std::exp(-i * (0.5 * td.arg_unwrapped));
        out.push_back({val, td.branch_index, MatrixElementMethod::BlockDet});
    }
    return out;
}

namespace {

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::MatrixXd h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = g(rng);
            h(i, j) = v;
            h(j, i) = v;
        }
    return h;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& x) {
    // Scaling and squaring with a Taylor core; inputs here are small-norm test
    // generators, so a fixed-order core is plenty.
    const double nrm = x.norm();
    int squarings = 0;
    Eigen::MatrixXd y = x;
    while (y.norm() > 0.25) {
        y *= 0.5;
        ++squarings;
        if (squarings > 60) throw NumericError("expm: norm too large");
    }
    const int n = static_cast<int>(x.rows());
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 24; ++k) {
        term = term * y / double(k);
        acc += term;
    }
    for (int s = 0; s < squarings; ++s) acc = acc * acc;
    (void)nrm;
    return acc;
}

} // namespace

SymplecticMap random_symplectic(int dof, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    const Eigen::MatrixXd h = random_symmetric(2 * dof, rng, scale);
    Eigen::MatrixXd x = -standard_form(dof) * h; // Omega X symmetric <=> X in sp(d)
    // Cap the generator norm: the cross-formula contracts are stated at
    // 1e-10, which huge determinants cannot meet in double precision.
    if (x.norm() > 2.5) x *= 2.5 / x.norm();
    return SymplecticMap(expm(x), 1e-9);
}

SymplecticMap random_unitary_symplectic(int dof, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.7);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dof, dof);
    Eigen::MatrixXd b(dof, dof);
    for (int i = 0; i < dof; ++i)
        for (int j = 0; j < i; ++j) {
            const double v = g(rng);
            a(i, j) = v;
            a(j, i) = -v;
        }
    for (int i = 0; i < dof; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = g(rng);
            b(i, j) = v;
            b(j, i) = v;
        }
    // X = [[A, -B], [B, A]] with A skew, B symmetric is both symplectic and
    // orthogonal in the Lie algebra; exp lands in U(d).
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2 * dof, 2 * dof);
    x.topLeftCorner(dof, dof) = a;
    x.topRightCorner(dof, dof) = -b;
    x.bottomLeftCorner(dof, dof) = b;
    x.bottomRightCorner(dof, dof) = a;
    return SymplecticMap(expm(x), 1e-9);
}

SymplecticMap random_positive_symplectic(int dof, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, scale);
    Eigen::MatrixXd a(dof, dof), b(dof, dof);
    for (int i = 0; i < dof; ++i)
        for (int j = 0; j <= i; ++j) {
            double v = g(rng);
            a(i, j) = v;
            a(j, i) = v;
            v = g(rng);
            b(i, j) = v;
            b(j, i) = v;
        }
    // X = [[A, B], [B, -A]] symmetric, in sp(d); exp is positive symmetric.
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2 * dof, 2 * dof);
    x.topLeftCorner(dof, dof) = a;
    x.topRightCorner(dof, dof) = b;
    x.bottomLeftCorner(dof, dof) = b;
    x.bottomRightCorner(dof, dof) = -a;
    if (x.norm() > 2.5) x *= 2.5 / x.norm();
    return SymplecticMap(expm(x), 1e-9);
}

SymplecticMap random_semisimple(int dof, std::uint64_t seed, double scale) {
    for (std::uint64_t k = 0; k < 64; ++k) {
        SymplecticMap s = random_symplectic(dof, seed + k * 1000003ull, scale);
        if (classify(s).semi_simple()) return s;
    }
    throw NumericError("random_semisimple: rejection sampling failed");
}

} // namespace grauert::symplectic
