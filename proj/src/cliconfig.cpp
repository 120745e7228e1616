#include "grauert/cliconfig.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "grauert/beams.hpp"
#include "grauert/qfunction.hpp"
#include "grauert/summation.hpp"
#include "grauert/symplectic.hpp"
#include "grauert/verify.hpp"
#include "grauert/weyl.hpp"

namespace grauert::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::vector<std::string> kCommands = {"classify", "qfunc",   "weyl-sum",
                                            "husimi",   "l2norm",  "smooth",
                                            "extract",  "beam",    "verify-all"};

std::vector<double> parse_vector(const std::string& value, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ConfigError("line " + std::to_string(line) + ": bad number '" + item + "'");
        }
    }
    return out;
}

double parse_double(const std::string& value, int line) {
    try {
        return std::stod(value);
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": bad number '" + value + "'");
    }
}

long parse_long(const std::string& value, int line) {
    try {
        return std::stol(value);
    } catch (...) {
        throw ConfigError("line " + std::to_string(line) + ": bad integer '" + value + "'");
    }
}

void apply_pair(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
    auto err = [&](const std::string& msg) {
        throw ConfigError("line " + std::to_string(line) + ": " + msg);
    };
    if (key == "command") {
        for (const auto& c : kCommands)
            if (value == c) {
                cfg.command = value;
                return;
            }
        err("unknown command '" + value + "'");
    } else if (key == "geometry") {
        if (value == "circle")
            cfg.geometry = geom::Geometry::Circle;
        else if (value == "torus")
            cfg.geometry = geom::Geometry::Torus;
        else if (value == "sphere")
            cfg.geometry = geom::Geometry::Sphere;
        else
            err("unknown geometry '" + value + "'");
    } else if (key == "m") {
        cfg.m = static_cast<int>(parse_long(value, line));
        if (cfg.m < 1 || cfg.m > 4) err("m must be in 1..4");
    } else if (key == "tau") {
        cfg.tau = parse_double(value, line);
    } else if (key == "tau_cap") {
        cfg.tau_cap = parse_double(value, line);
    } else if (key == "lambda_max") {
        cfg.lambda_max = parse_double(value, line);
    } else if (key == "n_max") {
        cfg.n_max = static_cast<int>(parse_long(value, line));
    } else if (key == "zeta_base") {
        cfg.zeta_base = parse_vector(value, line);
    } else if (key == "zeta_dir") {
        cfg.zeta_dir = parse_vector(value, line);
    } else if (key == "kernel_p") {
        cfg.kernel_p = static_cast<int>(parse_long(value, line));
    } else if (key == "kernel_radius") {
        cfg.kernel_radius = parse_double(value, line);
    } else if (key == "family") {
        if (value != "highest" && value != "zonal") err("family must be highest or zonal");
        cfg.family = value;
    } else if (key == "n") {
        cfg.n = static_cast<int>(parse_long(value, line));
    } else if (key == "lambda") {
        cfg.lambda = parse_double(value, line);
    } else if (key == "lambda_calib") {
        cfg.lambda_calib = parse_double(value, line);
    } else if (key == "abel_terms") {
        cfg.abel_terms = parse_long(value, line);
    } else if (key == "grid_points") {
        cfg.grid_points = static_cast<int>(parse_long(value, line));
    } else if (key == "quad_nodes") {
        cfg.quad_nodes = static_cast<int>(parse_long(value, line));
    } else if (key == "workers") {
        cfg.workers = static_cast<int>(parse_long(value, line));
    } else if (key == "matrix_file") {
        cfg.matrix_file = value;
    } else if (key == "out") {
        cfg.out = value;
    } else {
        err("unknown key '" + key + "'");
    }
}

void validate(const RunConfig& cfg) {
    if (cfg.command.empty()) throw ConfigError("missing required key 'command'");
    if (cfg.command == "classify") {
        if (cfg.matrix_file.empty())
            throw ConfigError("classify requires 'matrix_file'");
        return;
    }
    if (cfg.command == "verify-all") return;
    if (cfg.command == "beam") return;
    if (!cfg.geometry) throw ConfigError("missing required key 'geometry'");
    if (*cfg.geometry == geom::Geometry::Torus && cfg.m == 0)
        throw ConfigError("missing required key 'm' for geometry=torus");
    if (*cfg.geometry == geom::Geometry::Torus && cfg.m < 2)
        throw ConfigError("geometry=torus requires m >= 2");
    if (!(cfg.tau > 0.0) || cfg.tau > cfg.tau_cap)
        throw ConfigError("tau must lie in (0, " + std::to_string(cfg.tau_cap) +
                          "]: exponential weights must stay in range");
    if (*cfg.geometry != geom::Geometry::Sphere && cfg.lambda_max <= 0.0 &&
        cfg.command != "qfunc")
        throw ConfigError("missing required key 'lambda_max'");
    if (*cfg.geometry == geom::Geometry::Sphere && cfg.n_max <= 0 && cfg.command != "qfunc")
        throw ConfigError("geometry=sphere requires 'n_max'");
    if (2.0 * cfg.tau * std::max(cfg.lambda_max, double(cfg.n_max)) > 700.0)
        throw ConfigError("2 tau lambda_max must stay below 700 for double range");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        // trim
        const auto begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = raw.find_last_not_of(" \t\r");
        raw = raw.substr(begin, end - begin + 1);
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key=value");
        std::string key = raw.substr(0, eq);
        std::string value = raw.substr(eq + 1);
        const auto kend = key.find_last_not_of(" \t");
        key = key.substr(0, kend + 1);
        const auto vbegin = value.find_first_not_of(" \t");
        value = vbegin == std::string::npos ? "" : value.substr(vbegin);
        apply_pair(cfg, key, value, line);
    }
    validate(cfg);
    return cfg;
}

RunConfig parse_args(int argc, char** argv) {
    std::string text;
    std::vector<std::string> overrides;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config") {
            if (i + 1 >= argc) throw ConfigError("--config needs a file path");
            std::ifstream in(argv[++i]);
            if (!in) throw ConfigError(std::string("cannot open config file ") + argv[i]);
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        } else {
            if (arg.rfind("--", 0) == 0) arg = arg.substr(2);
            if (arg.find('=') == std::string::npos)
                throw ConfigError("expected key=value argument, got '" + arg + "'");
            overrides.push_back(arg);
        }
    }
    for (const auto& kv : overrides) text += "\n" + kv;
    return parse_config(text);
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file " + path);
    std::string header;
    std::getline(in, header);
    int d = 0;
    if (std::sscanf(header.c_str(), "d=%d", &d) != 1 || d < 0)
        throw ConfigError("matrix file must start with 'd=<int>'");
    Eigen::MatrixXd m(2 * d, 2 * d);
    for (int i = 0; i < 2 * d; ++i)
        for (int j = 0; j < 2 * d; ++j)
            if (!(in >> m(i, j)))
                throw ConfigError("matrix file ended before " + std::to_string(4 * d * d) +
                                  " entries");
    return m;
}

namespace {

class OutputWriter {
public:
    OutputWriter(const RunConfig& cfg, std::string command) : cfg_(cfg) {
        std::filesystem::create_directories(cfg.out);
        csv_.open(cfg.out + "/" + command + ".csv");
        summary_.open(cfg.out + "/summary.txt");
        start_ = std::chrono::steady_clock::now();
    }

    void header(const std::string& line) { csv_ << line << "\n"; }

    template <typename... T>
    void row(T... values) {
        bool first = true;
        (void)std::initializer_list<int>{(write_value(values, first), 0)...};
        csv_ << "\n";
    }

    void kv(const std::string& key, double value) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        summary_ << key << ": " << buf << "\n";
    }
    void kv(const std::string& key, const std::string& value) {
        summary_ << key << ": " << value << "\n";
    }

    void finish() {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        kv("wall_seconds", wall);
        kv("worker_count", double(worker_count()));
    }

private:
    template <typename T>
    void write_value(T v, bool& first) {
        if (!first) csv_ << ",";
        first = false;
        if constexpr (std::is_floating_point_v<T>) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            csv_ << buf;
        } else {
            csv_ << v;
        }
    }

    const RunConfig& cfg_;
    std::ofstream csv_;
    std::ofstream summary_;
    std::chrono::steady_clock::time_point start_;
};

geom::TubePoint make_zeta(const RunConfig& cfg) {
    const geom::Geometry g = *cfg.geometry;
    Eigen::VectorXd base, dir;
    if (g == geom::Geometry::Circle) {
        base = Eigen::VectorXd::Zero(1);
        dir = Eigen::VectorXd::Constant(1, -1.0);
    } else if (g == geom::Geometry::Torus) {
        base = Eigen::VectorXd::Zero(cfg.m);
        dir = Eigen::VectorXd::Zero(cfg.m);
        dir(0) = -1.0;
    } else {
        base = Eigen::Vector3d(1.0, 0.0, 0.0);
        dir = Eigen::Vector3d(0.0, -1.0, 0.0);
    }
    if (!cfg.zeta_base.empty())
        base = Eigen::Map<const Eigen::VectorXd>(cfg.zeta_base.data(), cfg.zeta_base.size());
    if (!cfg.zeta_dir.empty())
        dir = Eigen::Map<const Eigen::VectorXd>(cfg.zeta_dir.data(), cfg.zeta_dir.size());
    return geom::tube_point(g, base, dir, cfg.tau);
}

geom::Eigendata make_eigendata(const RunConfig& cfg, double lambda_reach) {
    switch (*cfg.geometry) {
        case geom::Geometry::Circle: return geom::Eigendata::circle(lambda_reach);
        case geom::Geometry::Torus: return geom::Eigendata::torus(cfg.m, lambda_reach);
        case geom::Geometry::Sphere:
            return cfg.family == "zonal"
                       ? geom::Eigendata::sphere_zonal(cfg.n_max, cfg.quad_nodes)
                       : geom::Eigendata::sphere_highest(cfg.n_max);
    }
    throw ConfigError("make_eigendata: unreachable");
}

int run_classify(const RunConfig& cfg, std::ostream& log) {
    const Eigen::MatrixXd m = read_matrix_file(cfg.matrix_file);
    symplectic::SymplecticMap s(m, 1e-8);
    const auto cls = symplectic::classify(s);
    OutputWriter out(cfg, "classify");
    out.header("n,re_G,im_G,abs_G");
    log << "class: " << symplectic::to_string(cls.kind) << "\n";
    out.kv("class", symplectic::to_string(cls.kind));
    for (std::size_t i = 0; i < cls.alphas.size(); ++i)
        out.kv("alpha_" + std::to_string(i), cls.alphas[i]);
    for (std::size_t i = 0; i < cls.mus.size(); ++i)
        out.kv("mu_" + std::to_string(i), cls.mus[i]);
    if (cls.semi_simple()) {
        const auto seq = symplectic::power_sequence(s, 5);
        for (int n = 1; n <= 5; ++n) {
            const auto g = seq[n - 1].value;
            log << "G_" << n << " = " << g.real() << (g.imag() < 0 ? " - " : " + ")
                << std::abs(g.imag()) << "i\n";
            out.row(n, g.real(), g.imag(), std::abs(g));
        }
    }
    out.finish();
    return 0;
}

int run_qfunc(const RunConfig& cfg, std::ostream& log) {
    const auto zeta = make_zeta(cfg);
    const auto pd = geom::poincare_data(zeta);
    OutputWriter out(cfg, "qfunc");
    out.header("lambda,q_abel,closed_form,residual");
    if (!pd) {
        out.kv("periodic", "false");
        out.finish();
        log << "not a periodic point; Q = 0\n";
        return 0;
    }
    out.kv("periodic", "true");
    out.kv("period", pd->period);

    if (*cfg.geometry == geom::Geometry::Torus) {
        // parabolic case: the closed flat-torus series
        const double kn = pd->period_literal;
        const long terms = 20000;
        const double lam_hi = cfg.lambda_max > 0 ? cfg.lambda_max : 20.0;
        for (int i = 0; i <= cfg.grid_points; ++i) {
            const double lambda = lam_hi * i / cfg.grid_points;
            const double q = geom::flat_torus_q(pd->lattice, cfg.tau, lambda, cfg.m, terms);
            out.row(lambda, q, 0.0, q);
        }
        out.kv("convention", "flat-torus series, literal |k| = " + std::to_string(kn));
        out.finish();
        return 0;
    }

    // (degenerate) elliptic: metaplectic phase from the path-counted data
    double s0 = 0.0;
    if (!pd->exponents.empty()) {
        for (double a : pd->exponents) s0 += 0.5 * a;
    } else {
        for (double a : pd->tag.alphas) s0 += 0.5 * a;
    }
    s0 = qfunction::sawtooth(s0);
    qfunction::QFunctionSpec spec = qfunction::elliptic_spec(s0, pd->period);
    spec.summation = qfunction::AbelPolicy{cfg.abel_terms, 0.0};
    double fitted_num = 0.0, fitted_den = 0.0;
    std::vector<double> lams, qs, closed;
    const double lam_hi = cfg.lambda_max > 0 ? cfg.lambda_max : 10.0;
    for (int i = 0; i <= cfg.grid_points; ++i) {
        const double lambda = lam_hi * i / cfg.grid_points;
        const double q = qfunction::q_eval(spec, lambda);
        const double cf = (qfunction::sawtooth(lambda * pd->period + s0) - std::numbers::pi) /
                          (2.0 * pd->period);
        lams.push_back(lambda);
        qs.push_back(q);
        closed.push_back(cf);
        fitted_num += q * cf;
        fitted_den += cf * cf;
    }
    const double c = fitted_num / fitted_den;
    for (std::size_t i = 0; i < lams.size(); ++i)
        out.row(lams[i], qs[i], closed[i], qs[i] - c * closed[i]);
    out.kv("s0_matrix_element", s0);
    out.kv("closed_form_constant", c);
    out.kv("abel_terms", double(cfg.abel_terms));
    out.finish();
    log << "s0 = " << s0 << ", fitted closed-form constant = " << c << "\n";
    return 0;
}

int run_weyl_sum(const RunConfig& cfg, std::ostream& log) {
    const auto zeta = make_zeta(cfg);
    geom::Eigendata data =
        *cfg.geometry == geom::Geometry::Sphere
            ? geom::Eigendata::sphere_clusters(cfg.n_max)
            : make_eigendata(cfg, cfg.lambda_max);
    const double lam_hi =
        *cfg.geometry == geom::Geometry::Sphere ? data.lambda_max() : cfg.lambda_max;
    std::vector<double> grid;
    for (int i = 1; i <= cfg.grid_points; ++i) grid.push_back(lam_hi * i / cfg.grid_points);
    const auto values = weyl::tempered_sum_grid(data, zeta, cfg.tau, grid);

    OutputWriter out(cfg, "weyl-sum");
    out.header("lambda,P_tau,model,residual");
    if (*cfg.geometry == geom::Geometry::Circle) {
        double c_tau = 0.0;
        for (int k = 1; k < 400; ++k) c_tau += std::exp(-4.0 * cfg.tau * k);
        c_tau += 1.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double model = grid[i] - (grid[i] - std::floor(grid[i])) + c_tau;
            out.row(grid[i], values[i], model, values[i] - model);
        }
        out.kv("model", "lambda - {lambda} + C(tau)");
        out.kv("C_tau", c_tau);
    } else {
        const double power = 0.5 * (data.dim() + 1);
        double num = 0.0, den = 0.0;
        for (std::size_t i = grid.size() / 2; i < grid.size(); ++i) {
            num += values[i] * std::pow(grid[i], power);
            den += std::pow(grid[i], 2.0 * power);
        }
        const double c = num / den;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double model = c * std::pow(grid[i], power);
            out.row(grid[i], values[i], model, values[i] - model);
        }
        out.kv("model", "c lambda^{(m+1)/2}");
        out.kv("fitted_c", c);
        out.kv("fit_window_lo", grid[grid.size() / 2]);
        out.kv("fit_window_hi", grid.back());
    }
    out.finish();
    log << "weyl-sum: " << grid.size() << " grid points\n";
    return 0;
}

int run_husimi(const RunConfig& cfg, std::ostream& log) {
    const auto zeta = make_zeta(cfg);
    geom::Eigendata data = make_eigendata(cfg, cfg.lambda_max);
    // top entry of the family (largest lambda, lexicographically last index)
    const std::size_t entry = data.size() - 1;
    OutputWriter out(cfg, "husimi");
    out.header("parameter,husimi_density");
    if (*cfg.geometry == geom::Geometry::Torus || *cfg.geometry == geom::Geometry::Circle) {
        const int n = std::max(64, cfg.grid_points);
        for (int i = 0; i < n; ++i) {
            const double ang = kTwoPi * i / n;
            Eigen::VectorXd dir(2);
            dir << std::cos(ang), std::sin(ang);
            if (*cfg.geometry == geom::Geometry::Circle) {
                dir.resize(1);
                dir << (i < n / 2 ? 1.0 : -1.0);
            }
            auto p = geom::tube_point(*cfg.geometry, zeta.x, dir, cfg.tau);
            out.row(ang, weyl::husimi(data, entry, cfg.tau, p));
        }
    }
    const auto sup = weyl::husimi_sup(data, entry, cfg.tau);
    out.kv("sup_sqrt_husimi", sup.value);
    out.kv("sup_density", sup.value * sup.value);
    out.kv("lambda", data.modes()[entry].lambda);
    out.finish();
    log << "husimi sup (sqrt) = " << sup.value << "\n";
    return 0;
}

int run_l2norm(const RunConfig& cfg, std::ostream& log) {
    geom::Eigendata data = make_eigendata(cfg, cfg.lambda_max);
    OutputWriter out(cfg, "l2norm");
    out.header("index,lambda,quadrature,oracle,ratio");
    int printed = 0;
    for (std::size_t i = 0; i < data.size() && printed < cfg.grid_points; ++i) {
        const auto& mode = data.modes()[i];
        if (*cfg.geometry == geom::Geometry::Torus && mode.idx[1] != 0) continue;
        if (*cfg.geometry == geom::Geometry::Torus && mode.idx[0] < 0) continue;
        const double quad = weyl::l2_norm_boundary(data, i, cfg.tau,
                                                   weyl::QuadratureSpec{cfg.quad_nodes});
        double oracle = quad;
        if (*cfg.geometry == geom::Geometry::Torus)
            oracle = weyl::torus_l2_bessel(mode.lambda, cfg.tau);
        out.row(mode.idx[0], mode.lambda, quad, oracle, quad / oracle);
        ++printed;
    }
    out.finish();
    log << "l2norm: " << printed << " entries\n";
    return 0;
}

int run_smooth(const RunConfig& cfg, std::ostream& log) {
    const auto zeta = make_zeta(cfg);
    const auto kernel = weyl::build_smoothing_kernel(cfg.kernel_p, cfg.kernel_radius);
    const double width = kernel.effective_width();
    geom::Eigendata data =
        *cfg.geometry == geom::Geometry::Sphere
            ? geom::Eigendata::sphere_clusters(cfg.n_max)
            : make_eigendata(cfg, cfg.lambda_max + width + 1.0);
    OutputWriter out(cfg, "smooth");
    out.header("lambda,smoothed,model,residual");
    const double lam_lo = std::max(1.0, width * 0.1);
    std::vector<double> lams, values;
    for (int i = 0; i <= cfg.grid_points; ++i) {
        const double lambda = lam_lo + (cfg.lambda_max - lam_lo) * i / cfg.grid_points;
        lams.push_back(lambda);
        values.push_back(weyl::smoothed_density(data, zeta, cfg.tau, kernel, lambda));
    }
    const double power = 0.5 * (data.dim() - 1);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lams.size(); ++i) {
        num += values[i] * std::pow(lams[i], power);
        den += std::pow(lams[i], 2.0 * power);
    }
    const double c = num / den;
    for (std::size_t i = 0; i < lams.size(); ++i) {
        const double model = c * std::pow(lams[i], power);
        out.row(lams[i], values[i], model, values[i] - model);
    }
    out.kv("kernel_p", double(cfg.kernel_p));
    out.kv("kernel_radius", cfg.kernel_radius);
    out.kv("effective_width", width);
    out.kv("fitted_c", c);
    out.finish();
    log << "smooth: fitted leading constant " << c << "\n";
    return 0;
}

int run_extract(const RunConfig& cfg, std::ostream& log) {
    const auto zeta = make_zeta(cfg);
    const auto pd = geom::poincare_data(zeta);
    const double period = pd ? pd->period : kTwoPi;
    const auto window = weyl::build_smoothing_kernel(cfg.kernel_p, cfg.kernel_radius);
    const double width = window.effective_width();
    const double lambda = cfg.lambda > 0.0 ? cfg.lambda : 0.5 * cfg.lambda_max;
    const double lambda_calib = cfg.lambda_calib > 0.0 ? cfg.lambda_calib : 0.5 * lambda;
    geom::Eigendata data = make_eigendata(cfg, std::max(cfg.lambda_max, lambda + width + 1.0));

    const double calib =
        weyl::calibrate_extraction(data, zeta, cfg.tau, period, window, lambda_calib, 1);
    OutputWriter out(cfg, "extract");
    out.header("n,re,im,magnitude");
    for (int n = 1; n <= cfg.n; ++n) {
        const auto est = weyl::period_coefficient_extract(data, zeta, cfg.tau, n, lambda,
                                                          period, window, calib);
        out.row(n, est.real(), est.imag(), std::abs(est));
        log << "|G_" << n << "| ~= " << std::abs(est) << "\n";
    }
    out.kv("calibration_constant", calib);
    out.kv("calibration_lambda", lambda_calib);
    out.kv("period", period);
    out.finish();
    return 0;
}

int run_beam(const RunConfig& cfg, std::ostream& log) {
    auto sol = beams::integrate_jacobi(beams::constant_curvature(1.0), kTwoPi,
                                       Eigen::MatrixXcd::Identity(1, 1) / std::sqrt(2.0),
                                       std::complex<double>(0.0, 1.0) *
                                           Eigen::MatrixXcd::Identity(1, 1) / std::sqrt(2.0),
                                       8192);
    const double drift = sol.wronskian_drift;
    auto spec = beams::make_beam(std::move(sol), std::max(1, cfg.n));
    OutputWriter out(cfg, "beam");
    out.header("s,y,re,im,abs");
    const double ylim = 4.0 / std::sqrt(spec.r);
    const int ns = std::max(16, cfg.grid_points / 16);
    for (int i = 0; i < ns; ++i) {
        const double s = kTwoPi * i / ns;
        for (int j = 0; j <= 16; ++j) {
            const double y = -ylim + 2.0 * ylim * j / 16;
            Eigen::VectorXd yv(1);
            yv << y;
            const auto v = beams::beam_eval(spec, s, yv);
            out.row(s, y, v.real(), v.imag(), std::abs(v));
        }
    }
    out.kv("r_k0", spec.r);
    out.kv("alpha_path_sum", spec.alpha_path_sum);
    out.kv("wronskian_drift", drift);
    out.finish();
    log << "beam: r = " << spec.r << "\n";
    return 0;
}

int run_verify_all(const RunConfig& cfg, std::ostream& log) {
    const auto report = verify::run_all(&log);
    std::filesystem::create_directories(cfg.out);
    std::ofstream file(cfg.out + "/verify.txt");
    verify::print_report(report, file);
    return report.all_pass() ? 0 : 2;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& log) {
    if (cfg.workers > 0) {
        setenv("GW_WORKERS", std::to_string(cfg.workers).c_str(), 1);
    }
    if (cfg.command == "classify") return run_classify(cfg, log);
    if (cfg.command == "qfunc") return run_qfunc(cfg, log);
    if (cfg.command == "weyl-sum") return run_weyl_sum(cfg, log);
    if (cfg.command == "husimi") return run_husimi(cfg, log);
    if (cfg.command == "l2norm") return run_l2norm(cfg, log);
    if (cfg.command == "smooth") return run_smooth(cfg, log);
    if (cfg.command == "extract") return run_extract(cfg, log);
    if (cfg.command == "beam") return run_beam(cfg, log);
    if (cfg.command == "verify-all") return run_verify_all(cfg, log);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

} // namespace grauert::cli
