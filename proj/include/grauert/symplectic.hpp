#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "grauert/errors.hpp"

namespace grauert::symplectic {

using Complex = std::complex<double>;

// Standard symplectic form Omega = [[0, I], [-I, 0]] for d degrees of freedom.
Eigen::MatrixXd standard_form(int dof);

// Compatible complex structure used by the matrix-element identities,
// J = [[0, I], [-I, 0]] in the same (x, y) block basis.
Eigen::MatrixXd standard_complex_structure(int dof);

bool check_symplectic(const Eigen::MatrixXd& m, double tol);

// Real 2d x 2d matrix in the block convention S = [[A, B], [C, D]].
// The constructor enforces S^T Omega S = Omega and det S = 1 within tol.
// d = 0 (empty matrix) is allowed and stands for the trivial transversal of a
// one-dimensional geometry; all matrix elements are 1 there.
class SymplecticMap {
public:
    SymplecticMap() = default;
    explicit SymplecticMap(Eigen::MatrixXd m, double tol = 1e-10);

    int dof() const { return d_; }
    const Eigen::MatrixXd& matrix() const { return m_; }
    double tol() const { return tol_; }

    Eigen::MatrixXd block_a() const { return m_.topLeftCorner(d_, d_); }
    Eigen::MatrixXd block_b() const { return m_.topRightCorner(d_, d_); }
    Eigen::MatrixXd block_c() const { return m_.bottomLeftCorner(d_, d_); }
    Eigen::MatrixXd block_d() const { return m_.bottomRightCorner(d_, d_); }

    SymplecticMap inverse() const;
    SymplecticMap power(long n) const;

    // Real fractional power along the principal-log path t -> S^t (requires a
    // semi-simple matrix; complex eigendecomposition under the hood).
    Eigen::MatrixXd fractional_power(double t) const;

private:
    Eigen::MatrixXd m_;
    int d_ = 0;
    double tol_ = 1e-10;
};

// Counterclockwise rotation of one (x, y) plane; symplectic for d = 1.
SymplecticMap rotation(double alpha);
// diag(e^mu, e^-mu), d = 1.
SymplecticMap hyperbolic(double mu);
// Exponential of the loxodromic generator block: for the standard 4x4 form
// with generator blocks [[a, b], [-b, a]] and [[-a, b], [-b, -a]] this is
// diag(e^a R(b), e^-a R(b)) with R a clockwise rotation; eigenvalues
// e^{+-a +- ib}. d = 2.
SymplecticMap loxodromic_block(double a, double b);
// Direct sum on the (x, y) block convention.
SymplecticMap direct_sum(const SymplecticMap& s1, const SymplecticMap& s2);

enum class SpectralClass {
    Elliptic,
    HyperbolicPositive,
    Loxodromic,
    DegenerateElliptic,
    NonSemisimple,
    Mixed,
};

const char* to_string(SpectralClass c);

struct LoxodromicExponents {
    double alpha; // rotation angle in (0, pi)
    double mu;    // dilation exponent > 0
};

struct Classification {
    SpectralClass kind = SpectralClass::Elliptic;
    // Elliptic exponents in (0, 2pi): arguments of the Krein-positive
    // eigenvalues of each unit-modulus pair.
    std::vector<double> alphas;
    // Hyperbolic exponents mu_j > 0 from pairs e^{+-mu_j}.
    std::vector<double> mus;
    std::vector<LoxodromicExponents> lox;
    // Per-quadruple tags when kind == Mixed.
    std::vector<SpectralClass> block_kinds;
    double eigenvector_condition = 0.0;

    bool semi_simple() const { return kind != SpectralClass::NonSemisimple; }
};

// Eigenvalue-quadruple classification. Tolerance is tol_scale * (1 + ||S||);
// semi-simplicity is decided by the eigenvector condition number.
Classification classify(const SymplecticMap& S, double tol_scale = 1e-9);

// P = (1/2)(A + D + i(C - B)), the holomorphic block of the unitary conjugate.
Eigen::MatrixXcd holomorphic_block(const SymplecticMap& S);

// Polar decomposition S = U * Phat with Phat = (S^T S)^{1/2} positive definite
// symplectic and U orthogonal symplectic.
std::pair<SymplecticMap, SymplecticMap> polar_decompose(const SymplecticMap& S);

enum class MatrixElementMethod { BlockDet, KeyId, Magnitude, Oracle };

struct MatrixElementValue {
    Complex value;
    // Winding the branch-tracked determinant argument accumulated past the
    // principal sheet; 0 for single-shot principal-branch evaluations.
    int branch_index = 0;
    MatrixElementMethod method = MatrixElementMethod::BlockDet;
};

// 2^{d/2} det(A + D + i(B - C))^{-1/2}, principal square-root branch.
MatrixElementValue matrix_element_blockdet(const SymplecticMap& S);

// 2^d det(I + iJ + S(I - iJ))^{-1/2}, principal branch; agrees with blockdet.
MatrixElementValue matrix_element_keyid(const SymplecticMap& S);

// 2^{d/2} det(I + S^T S)^{-1/4} = |blockdet|.
double matrix_element_magnitude(const SymplecticMap& S);

// Closed Gaussian form of the ground-state overlap integral
// int exp(-(|u|^2 + |Su|^2)/tau) du, evaluated through a Cholesky factor of
// I + S^T S and normalized so S = I gives 1. Equals the magnitude formula;
// independent of tau after normalization.
double matrix_element_gaussian_oracle(const SymplecticMap& S, double levi_scale);

// Unwrapped argument of t -> det(A_t + D_t + i(B_t - C_t)) along the
// principal-log path S^t, t in [0, t_end], refined until consecutive steps
// move the argument by < pi/2. Also returns |det| at t_end.
struct TrackedDet {
    double arg_unwrapped;
    double abs;
    int branch_index; // full turns beyond the principal sheet
};
TrackedDet tracked_blockdet(const SymplecticMap& S, double t_end);

// G_1..G_N for the iterates S^n. Elliptic blocks contribute e^{i n alpha_j/2},
// hyperbolic blocks (cosh n mu_j)^{-1/2}; loxodromic and mixed inputs fall
// back to branch-tracked blockdet along S^t. NonSemisimple inputs are
// rejected (flat-torus parabolic data is handled by the geometry module).
std::vector<MatrixElementValue> power_sequence(const SymplecticMap& S, int n_max);

// Deterministic pseudo-random generators for property tests and the
// verification suite.
SymplecticMap random_symplectic(int dof, std::uint64_t seed, double scale = 0.6);
SymplecticMap random_unitary_symplectic(int dof, std::uint64_t seed);
SymplecticMap random_positive_symplectic(int dof, std::uint64_t seed, double scale = 0.8);
// Random semi-simple map (rejection on the eigenvector condition number).
SymplecticMap random_semisimple(int dof, std::uint64_t seed, double scale = 0.6);

} // namespace grauert::symplectic
