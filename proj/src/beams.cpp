#include "grauert/beams.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace grauert::beams {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wronskian_error(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& v) {
    const int n = static_cast<int>(y.rows());
    const Eigen::MatrixXcd w1 = y.adjoint() * v - v.adjoint() * y -
                                Complex(0.0, 1.0) * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd w2 = y.transpose() * v - v.transpose() * y;
    return std::max(w1.cwiseAbs().maxCoeff(), w2.cwiseAbs().maxCoeff());
}

// One RK4 step of Y' = V, V' = -K(s) Y along direction ds (possibly complex).
void rk4_step(const CurvatureFn& curvature, Complex s, Complex ds, Eigen::MatrixXcd& y,
              Eigen::MatrixXcd& v) {
    auto f = [&](Complex at, const Eigen::MatrixXcd& yy, const Eigen::MatrixXcd& vv,
                 Eigen::MatrixXcd& dy, Eigen::MatrixXcd& dv) {
        dy = vv;
        dv = -curvature(at) * yy;
    };
    Eigen::MatrixXcd k1y, k1v, k2y, k2v, k3y, k3v, k4y, k4v;
    f(s, y, v, k1y, k1v);
    f(s + 0.5 * ds, y + 0.5 * ds * k1y, v + 0.5 * ds * k1v, k2y, k2v);
    f(s + 0.5 * ds, y + 0.5 * ds * k2y, v + 0.5 * ds * k2v, k3y, k3v);
    f(s + ds, y + ds * k3y, v + ds * k3v, k4y, k4v);
    y += ds / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v += ds / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
}

double principal_arg_step(Complex cur, Complex prev) {
    const double step = std::arg(cur / prev);
    if (std::abs(step) >= kPi / 2.0)
        throw CausticError("beams: determinant branch moved too fast between steps");
    return step;
}

} // namespace

CurvatureFn constant_curvature(double k) {
    return [k](Complex) { return Complex(k, 0.0); };
}

CurvatureFn perturbed_sphere(double eps, int mode, double length) {
    return [eps, mode, length](Complex s) {
        return 1.0 + eps * std::cos(kTwoPi * double(mode) * s / length);
    };
}

void JacobiSolution::interpolate(double at, Eigen::MatrixXcd& y_out,
                                 Eigen::MatrixXcd& ydot_out) const {
    if (at < s.front() - 1e-12 || at > s.back() + 1e-12)
        throw DomainError("JacobiSolution: interpolation point outside the grid");
    const double h = s[1] - s[0];
    std::size_t i = std::min<std::size_t>(
        s.size() - 2, static_cast<std::size_t>(std::max(0.0, (at - s.front()) / h)));
    const double t = std::clamp((at - s[i]) / h, 0.0, 1.0);
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    y_out = h00 * y[i] + h10 * h * ydot[i] + h01 * y[i + 1] + h11 * h * ydot[i + 1];
    // derivative data for Ydot uses Ydotdot = -K Y
    const Eigen::MatrixXcd a0 = -curvature(s[i]) * y[i];
    const Eigen::MatrixXcd a1 = -curvature(s[i + 1]) * y[i + 1];
    ydot_out = h00 * ydot[i] + h10 * h * a0 + h01 * ydot[i + 1] + h11 * h * a1;
}

double JacobiSolution::det_arg_at(double at) const {
    const double h = s[1] - s[0];
    std::size_t i = std::min<std::size_t>(
        s.size() - 2, static_cast<std::size_t>(std::max(0.0, (at - s.front()) / h)));
    const double t = std::clamp((at - s[i]) / h, 0.0, 1.0);
    return (1.0 - t) * det_arg[i] + t * det_arg[i + 1];
}

JacobiSolution integrate_jacobi(const CurvatureFn& curvature, double length,
                                const Eigen::MatrixXcd& y0, const Eigen::MatrixXcd& ydot0,
                                int steps) {
    if (length <= 0.0) throw DomainError("integrate_jacobi: length must be positive");
    if (steps < 8) throw DomainError("integrate_jacobi: too few steps");
    const double init_err = wronskian_error(y0, ydot0);
    if (init_err > 1e-10)
        throw DomainError("integrate_jacobi: initial data violates the Wronskian normalization");

    JacobiSolution sol;
    sol.curvature = curvature;
    sol.length = length;
    sol.s.reserve(steps + 1);
    sol.y.reserve(steps + 1);
    sol.ydot.reserve(steps + 1);

    Eigen::MatrixXcd y = y0, v = ydot0;
    const double h = length / steps;
    double drift = init_err;
    Complex prev_det = y0.determinant();
    double arg = std::arg(prev_det);
    double min_abs = std::abs(prev_det), max_abs = min_abs;

    sol.s.push_back(0.0);
    sol.y.push_back(y);
    sol.ydot.push_back(v);
    sol.det_abs.push_back(std::abs(prev_det));
    sol.det_arg.push_back(arg);

    for (int i = 1; i <= steps; ++i) {
        rk4_step(curvature, Complex((i - 1) * h, 0.0), Complex(h, 0.0), y, v);
        drift = std::max(drift, wronskian_error(y, v));
        const Complex det = y.determinant();
        const double abs_det = std::abs(det);
        min_abs = std::min(min_abs, abs_det);
        max_abs = std::max(max_abs, abs_det);
        if (abs_det < 1e-8 * max_abs)
            throw CausticError("integrate_jacobi: det Y crossed zero (caustic)");
        arg += principal_arg_step(det, prev_det);
        prev_det = det;
        sol.s.push_back(i * h);
        sol.y.push_back(y);
        sol.ydot.push_back(v);
        sol.det_abs.push_back(abs_det);
        sol.det_arg.push_back(arg);
    }
    if (drift > 1e-6)
        throw AccuracyError("integrate_jacobi: Wronskian drift above 1e-6; reduce the step");
    sol.wronskian_drift = drift;
    return sol;
}

std::vector<Eigen::MatrixXcd> riccati_gamma(const JacobiSolution& sol) {
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(sol.y.size());
    for (std::size_t i = 0; i < sol.y.size(); ++i) {
        if (sol.det_abs[i] == 0.0) throw CausticError("riccati_gamma: singular Y");
        out.push_back(sol.ydot[i] * sol.y[i].inverse());
    }
    return out;
}

double riccati_residual(const JacobiSolution& sol) {
    const auto gamma = riccati_gamma(sol);
    const double h = sol.s[1] - sol.s[0];
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < gamma.size(); ++i) {
        const Eigen::MatrixXcd dg = (gamma[i + 1] - gamma[i - 1]) / (2.0 * h);
        const Eigen::MatrixXcd res =
            dg + gamma[i] * gamma[i] +
            sol.curvature(sol.s[i]) *
                Eigen::MatrixXcd::Identity(sol.dim(), sol.dim());
        worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
    return worst;
}

double gamma_identity_error(const JacobiSolution& sol) {
    const auto gamma = riccati_gamma(sol);
    double worst = 0.0;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const Eigen::MatrixXcd im = (gamma[i] - gamma[i].adjoint()) / Complex(0.0, 2.0);
        const Eigen::MatrixXcd rhs = 0.5 * (sol.y[i] * sol.y[i].adjoint()).inverse();
        worst = std::max(worst, (im - rhs).cwiseAbs().maxCoeff());
        // positive definiteness of Im Gamma
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(im);
        if (es.eigenvalues().minCoeff() <= 0.0)
            throw NumericError("gamma_identity_error: Im Gamma lost positivity");
    }
    return worst;
}

double r_kq(double length, int k, const std::vector<double>& alphas_path,
            const std::vector<int>& q) {
    double acc = kTwoPi * k;
    for (std::size_t j = 0; j < alphas_path.size(); ++j) {
        const double qj = j < q.size() ? double(q[j]) : 0.0;
        acc += (qj + 0.5) * alphas_path[j];
    }
    return acc / length;
}

BeamSpec make_beam(JacobiSolution sol, int k, double quantize_length) {
    BeamSpec spec;
    const double lq = quantize_length > 0.0 ? quantize_length : sol.length;
    if (lq > sol.length + 1e-12)
        throw DomainError("make_beam: quantization period exceeds the integrated range");
    spec.alpha_path_sum = sol.det_arg_at(lq) - sol.det_arg.front();
    spec.k = k;
    spec.r = (kTwoPi * k + 0.5 * spec.alpha_path_sum) / lq;
    if (spec.r <= 0.0) throw DomainError("make_beam: nonpositive quantized frequency");
    const int d = sol.dim();
    // |U_0|^2 integrates to (2 pi / r)^{d/2} per unit length of the axis
    // (Im Gamma = (1/2)(Y Y*)^{-1} makes the Gaussian integral s-independent).
    spec.norm = 1.0 / std::sqrt(lq * std::pow(kTwoPi / spec.r, 0.5 * d));
    spec.jacobi = std::move(sol);
    return spec;
}

namespace {

Complex beam_value(const BeamSpec& spec, Complex phase_s, const Eigen::MatrixXcd& y,
                   const Eigen::MatrixXcd& ydot, double det_arg_unwrapped,
                   const Eigen::VectorXcd& transverse) {
    const Complex det = y.determinant();
    const Complex det_invsqrt =
        std::polar(1.0 / std::sqrt(std::abs(det)), -0.5 * det_arg_unwrapped);
    const Eigen::MatrixXcd gamma = ydot * y.inverse();
    const Complex quad = (transverse.transpose() * (gamma * transverse))(0, 0);
    const Complex i(0.0, 1.0);
    return spec.norm * std::exp(i * spec.r * phase_s) * det_invsqrt *
           std::exp(0.5 * i * spec.r * quad);
}

} // namespace

Complex beam_eval(const BeamSpec& spec, double s, const Eigen::VectorXd& y) {
    if (y.size() != spec.jacobi.dim())
        throw DimensionError("beam_eval: transverse dimension mismatch");
    if (y.norm() > 5.0 / std::sqrt(spec.r))
        throw DomainError("beam_eval: outside the validity tube |y| <= 5 r^{-1/2}");
    Eigen::MatrixXcd yy, vv;
    spec.jacobi.interpolate(s, yy, vv);
    return beam_value(spec, Complex(s, 0.0), yy, vv, spec.jacobi.det_arg_at(s),
                      y.cast<Complex>());
}

Complex beam_complexify(const BeamSpec& spec, double s, double sigma, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& eta) {
    if (y.size() != spec.jacobi.dim() || eta.size() != spec.jacobi.dim())
        throw DimensionError("beam_complexify: transverse dimension mismatch");
    Eigen::MatrixXcd yy, vv;
    spec.jacobi.interpolate(s, yy, vv);
    double arg = spec.jacobi.det_arg_at(s);
    Complex det_prev = std::polar(std::abs(yy.determinant()), std::fmod(arg, kTwoPi));
    // integrate along the imaginary direction, tracking the branch
    const int steps = std::max(64, static_cast<int>(std::ceil(std::abs(sigma) * 256)));
    const Complex ds(0.0, sigma / steps);
    Complex at(s, 0.0);
    det_prev = yy.determinant();
    for (int i = 0; i < steps; ++i) {
        rk4_step(spec.jacobi.curvature, at, ds, yy, vv);
        at += ds;
        const Complex det = yy.determinant();
        if (std::abs(det) < 1e-12)
            throw CausticError("beam_complexify: caustic on the complex path");
        arg += principal_arg_step(det, det_prev);
        det_prev = det;
    }
    Eigen::VectorXcd transverse = y.cast<Complex>() + Complex(0.0, 1.0) * eta.cast<Complex>();
    return beam_value(spec, Complex(s, sigma), yy, vv, arg, transverse);
}

MonodromyData poincare_from_jacobi(const CurvatureFn& curvature, double length, int dim,
                                   int steps) {
    // propagate the real basis (y0, ydot0) = (I, 0) and (0, I)
    Eigen::MatrixXcd y1 = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd v1 = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd y2 = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd v2 = Eigen::MatrixXcd::Identity(dim, dim);
    const double h = length / steps;
    for (int i = 0; i < steps; ++i) {
        rk4_step(curvature, Complex(i * h, 0.0), Complex(h, 0.0), y1, v1);
        rk4_step(curvature, Complex(i * h, 0.0), Complex(h, 0.0), y2, v2);
    }
    Eigen::MatrixXd m(2 * dim, 2 * dim);
    m.topLeftCorner(dim, dim) = y1.real();
    m.topRightCorner(dim, dim) = y2.real();
    m.bottomLeftCorner(dim, dim) = v1.real();
    m.bottomRightCorner(dim, dim) = v2.real();
    MonodromyData out{symplectic::SymplecticMap(m, 1e-8), {}, {}, length};
    out.tag = symplectic::classify(out.map);
    out.alphas = out.tag.alphas;
    return out;
}

FloquetFrame floquet_frame(const CurvatureFn& curvature, double length, int dim, int steps) {
    const MonodromyData mono = poincare_from_jacobi(curvature, length, dim, steps);
    if (mono.tag.kind != symplectic::SpectralClass::Elliptic)
        throw UnsupportedClassError("floquet_frame: monodromy is not elliptic");
    Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(mono.map.matrix());
    if (es.info() != Eigen::Success) throw NumericError("floquet_frame: eigen solver failed");
    const Eigen::MatrixXd om = symplectic::standard_form(dim);

    FloquetFrame frame;
    frame.y0.resize(dim, dim);
    frame.ydot0.resize(dim, dim);
    int col = 0;
    for (int i = 0; i < 2 * dim && col < dim; ++i) {
        Complex lam = es.eigenvalues()(i);
        if (lam.imag() <= 0.0) continue; // visit one member of each pair
        Eigen::VectorXcd w = es.eigenvectors().col(i);
        // The Wronskian pairing (Y* Ydot - Ydot* Y)_{jj} = conj(w)^T Omega w;
        // pick the pair member with value +i (the sphere frame (1, i)/sqrt(2)
        // fixes the orientation) and scale it to exactly +i.
        Complex pairing = (w.adjoint() * om.cast<Complex>() * w)(0, 0);
        if (pairing.imag() < 0.0) {
            w = w.conjugate();
            lam = std::conj(lam);
            pairing = std::conj(pairing);
        }
        w /= std::sqrt(pairing.imag());
        frame.y0.col(col) = w.head(dim);
        frame.ydot0.col(col) = w.tail(dim);
        frame.alphas.push_back(std::arg(lam));
        ++col;
    }
    if (col != dim) throw NumericError("floquet_frame: could not assemble the frame");
    // report exponents in (0, 2 pi)
    for (double& a : frame.alphas)
        if (a <= 0.0) a += kTwoPi;
    return frame;
}

} // namespace grauert::beams
