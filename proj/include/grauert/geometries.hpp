#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "grauert/errors.hpp"
#include "grauert/symplectic.hpp"

namespace grauert::geom {

using Complex = std::complex<double>;

enum class Geometry { Circle, Torus, Sphere };

// A point of the tube boundary: base point x, covector xi with |xi|_g = tau.
// Circle/torus store angle coordinates; the sphere stores a unit 3-vector and
// a tangent 3-vector. The complexified point is exp_x(i xi).
struct TubePoint {
    Geometry geometry = Geometry::Circle;
    int m = 1;
    Eigen::VectorXd x;
    Eigen::VectorXd xi;
    double tau = 0.0;
};

// Builds the point from a unit covector direction; tau = 0 is allowed and
// gives the real point itself (restriction tests).
TubePoint tube_point(Geometry g, const Eigen::VectorXd& x, const Eigen::VectorXd& xi_direction,
                     double tau);

// Transfer of the geodesic flow to the tube boundary; closed form on the
// models: angle translation, or rotation of the (x, v) plane.
TubePoint geodesic_flow(const TubePoint& p, double t);

// cosh(tau) x + i sinh(tau) v for the sphere.
Eigen::Vector3cd sphere_embed(const TubePoint& p);

// Tube radius recovered from the complexified distance: |Im arccos(z.z(bar))|/2.
double sphere_grauert_radius(const Eigen::Vector3cd& z);

struct Mode {
    double lambda = 0.0;
    std::array<int, 4> idx{0, 0, 0, 0};
};

// One family of complexified eigenfunctions with shared fast evaluators.
// Modes are sorted by (lambda, index); evaluators are pure.
class Eigendata {
public:
    enum class Family { PlaneWave, SphereCluster, SphereHighest, SphereZonal };

    static Eigendata circle(double lambda_max);
    static Eigendata torus(int m, double lambda_max);
    // Full degree-N eigenspace diagonals sum_m |Y_N^m(zeta)|^2 (addition
    // theorem); no single complexified evaluator exists for these.
    static Eigendata sphere_clusters(int n_max);
    static Eigendata sphere_highest(int n_max);
    // Zonal harmonics, complexified through the Legendre quadrature with
    // max(256, 8N) nodes (override with quad_nodes; below-Nyquist is an error).
    static Eigendata sphere_zonal(int n_max, int quad_nodes = 0);

    Geometry geometry() const { return geometry_; }
    Family family() const { return family_; }
    int dim() const { return m_; }
    double lambda_max() const { return modes_.empty() ? 0.0 : modes_.back().lambda; }
    std::size_t size() const { return modes_.size(); }
    const std::vector<Mode>& modes() const { return modes_; }

    double abs2(const Mode& mode, const TubePoint& p) const;
    double log_abs2(const Mode& mode, const TubePoint& p) const;
    Complex complexified(const Mode& mode, const TubePoint& p) const;

    // Spec-shaped per-entry view; the returned closures reference *this.
    struct Entry {
        double lambda;
        std::vector<long> index;
        std::function<Complex(const TubePoint&)> eval_complexified;
        std::function<double(const TubePoint&)> eval_abs2;
        std::function<double(const TubePoint&)> eval_log_abs2;
    };
    Entry entry(std::size_t i) const;

    // Normalization constant of the highest-weight harmonic (|Y_N^N| = c_n |w|^N).
    double highest_weight_constant(int n) const;

private:
    Geometry geometry_ = Geometry::Circle;
    Family family_ = Family::PlaneWave;
    int m_ = 1;
    int quad_nodes_ = 0; // zonal override
    std::vector<Mode> modes_;
};

// The paper-convention L2(S^2) norm-square of the monomial (x + iy)^N,
// Gamma(N+1)/Gamma(N+3/2); the honest surface-measure value carries an extra
// 2 pi^{3/2}.
double sphere_monomial_norm_sq_gamma(int n);

// Addition-theorem kernel (2N+1)/(4 pi) P_N(z . w) for complexified points.
Complex sphere_projection_kernel(int n, const Eigen::Vector3cd& z, const Eigen::Vector3cd& w);

struct PoincareData {
    double period = 0.0;         // 2 pi |k'| on the torus, 2 pi on circle/sphere
    double period_literal = 0.0; // the lattice-norm convention |k'| on the torus
    std::optional<symplectic::SymplecticMap> map;
    bool parabolic = false;
    symplectic::Classification tag;
    std::vector<double> exponents; // path-counted Floquet data where known
    Eigen::VectorXi lattice;       // primitive torus direction
};

// nullopt = not a periodic point (irrational torus direction).
std::optional<PoincareData> poincare_data(const TubePoint& p, int denominator_cap = 4096);

// Truncated second-term series for the flat torus: sum over n of
// sin(n lambda |k|)/(n |k|) Re (lambda/(n|k| + 2 i tau))^{(m-1)/2}.
double flat_torus_q(const Eigen::VectorXi& k, double tau, double lambda, int m, long n_terms);

} // namespace grauert::geom
