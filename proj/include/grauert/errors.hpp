#pragma once

#include <stdexcept>
#include <string>

namespace grauert {

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Eigen-solver or other numerical-kernel failure.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Metaplectic caustic: det(A + D + i(B - C)) vanishes.
struct SingularConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature or search grid resolution below what the request needs.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigendata does not reach the requested spectral window.
struct CoverageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CausticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace grauert
