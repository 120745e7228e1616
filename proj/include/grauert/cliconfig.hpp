#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "grauert/errors.hpp"
#include "grauert/geometries.hpp"

namespace grauert::cli {

// Flat key=value configuration; '#' starts a comment. Unknown keys and range
// violations are errors carrying the line number. Command-line flags mirror
// the keys and override the file.
struct RunConfig {
    std::string command; // classify qfunc weyl-sum husimi l2norm smooth extract beam verify-all
    std::optional<geom::Geometry> geometry;
    int m = 0;          // torus dimension (required with geometry=torus)
    double tau = 0.5;
    double tau_cap = 2.0;
    double lambda_max = 0.0;
    int n_max = 0;      // sphere degree cutoff
    std::vector<double> zeta_base;
    std::vector<double> zeta_dir;
    int kernel_p = 6;
    double kernel_radius = 2.0;
    std::string family = "highest"; // sphere entry family: highest | zonal
    int n = 1;                      // period index for extract
    double lambda = 0.0;            // evaluation point for extract
    double lambda_calib = 0.0;
    long abel_terms = 100000;
    int grid_points = 1000;
    int quad_nodes = 0;
    int workers = 0;
    std::string matrix_file;
    std::string out = "out";
};

RunConfig parse_config(const std::string& text);

// argv form: [--config FILE] [key=value ...]; flags override file entries.
RunConfig parse_args(int argc, char** argv);

// Matrix-input format for classify: first line "d=<int>", then 2d rows of 2d
// whitespace-separated entries, row-major.
Eigen::MatrixXd read_matrix_file(const std::string& path);

// Runs the command; writes <out>/<command>.csv and <out>/summary.txt.
// Returns 0 on success, 2 on verification failure, 1 on error.
int run(const RunConfig& config, std::ostream& log);

} // namespace grauert::cli
