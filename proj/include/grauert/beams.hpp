#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "grauert/errors.hpp"
#include "grauert/symplectic.hpp"

namespace grauert::beams {

using Complex = std::complex<double>;

// Analytic curvature profile along the geodesic, evaluable at complex
// arclength (needed for the tube continuation).
using CurvatureFn = std::function<Complex(Complex)>;

CurvatureFn constant_curvature(double k = 1.0);
// 1 + eps cos(mode * 2 pi s / L)
CurvatureFn perturbed_sphere(double eps, int mode, double length);

// Dense solution of Y'' + K(s) Y = 0 on [0, L] with the Wronskian
// normalizations Y* Ydot - Ydot* Y = iI and Y^T Ydot - Ydot^T Y = 0.
struct JacobiSolution {
    std::vector<double> s;
    std::vector<Eigen::MatrixXcd> y;
    std::vector<Eigen::MatrixXcd> ydot;
    std::vector<double> det_abs; // |det Y| along the grid
    std::vector<double> det_arg; // branch-continuous arg det Y
    CurvatureFn curvature;
    double length = 0.0;
    double wronskian_drift = 0.0; // certified on output

    int dim() const { return y.empty() ? 0 : static_cast<int>(y.front().rows()); }
    // Cubic Hermite interpolation of (Y, Ydot) between grid points.
    void interpolate(double at, Eigen::MatrixXcd& y_out, Eigen::MatrixXcd& ydot_out) const;
    double det_arg_at(double at) const;
};

// Classical fixed-step RK4; drift above 1e-6 is a step-size error, a vanishing
// det Y is a caustic error.
JacobiSolution integrate_jacobi(const CurvatureFn& curvature, double length,
                                const Eigen::MatrixXcd& y0, const Eigen::MatrixXcd& ydot0,
                                int steps);

// Gamma = Ydot Y^{-1} at every grid point.
std::vector<Eigen::MatrixXcd> riccati_gamma(const JacobiSolution& sol);
// max-norm residual of Gammadot + Gamma^2 + K by central differences.
double riccati_residual(const JacobiSolution& sol);
// max-norm error of Im Gamma = (1/2)(Y Y*)^{-1}.
double gamma_identity_error(const JacobiSolution& sol);

struct BeamSpec {
    JacobiSolution jacobi;
    std::vector<double> alphas; // monodromy Floquet exponents mod 2 pi (when elliptic)
    double alpha_path_sum = 0.0; // winding-counted sum from arg det Y over the period
    int k = 0;
    double r = 0.0;    // r_{k,0}
    double norm = 1.0; // L2 normalization over the tube
};

double r_kq(double length, int k, const std::vector<double>& alphas_path,
            const std::vector<int>& q = {});

// Ground beam from a Floquet-framed Jacobi solution. quantize_length is the
// primitive period (defaults to the full solution interval).
BeamSpec make_beam(JacobiSolution sol, int k, double quantize_length = 0.0);

// norm * e^{i r s} (det Y(s))^{-1/2} e^{(i/2) r <Gamma(s) y, y>}; valid for
// |y| <= 5 r^{-1/2}.
Complex beam_eval(const BeamSpec& spec, double s, const Eigen::VectorXd& y);

// Continuation to complex arclength s + i sigma and complex transverse
// coordinates y + i eta by integrating the Jacobi system along the imaginary
// direction (the curvature profile must be analytic).
Complex beam_complexify(const BeamSpec& spec, double s, double sigma, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& eta);

struct MonodromyData {
    symplectic::SymplecticMap map;
    symplectic::Classification tag;
    std::vector<double> alphas; // elliptic exponents when present
    double period = 0.0;
};

// Real 2(m-1) x 2(m-1) monodromy of (y, ydot) over one period.
MonodromyData poincare_from_jacobi(const CurvatureFn& curvature, double length, int dim,
                                   int steps);

struct FloquetFrame {
    Eigen::MatrixXcd y0;
    Eigen::MatrixXcd ydot0;
    std::vector<double> alphas;
};

// Initial frame diagonalizing the monodromy (P Y_j = e^{i alpha_j} Y_j),
// normalized to the standard Wronskians; requires an elliptic monodromy.
FloquetFrame floquet_frame(const CurvatureFn& curvature, double length, int dim, int steps);

} // namespace grauert::beams
