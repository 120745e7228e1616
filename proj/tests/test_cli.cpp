#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "grauert/cliconfig.hpp"

using namespace grauert;
using namespace grauert::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("gwcli-" + std::to_string(::getpid()) + "-" +
                        std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("parse_config accepts the minimal weyl-sum configuration") {
    const auto cfg = parse_config("command=weyl-sum\ngeometry=circle\ntau=0.5\nlambda_max=100");
    CHECK(cfg.command == "weyl-sum");
    REQUIRE(cfg.geometry.has_value());
    CHECK(*cfg.geometry == geom::Geometry::Circle);
    CHECK(cfg.tau == 0.5);
    CHECK(cfg.lambda_max == 100.0);
}

TEST_CASE("parse_config diagnostics") {
    // range violation names the invariant
    try {
        parse_config("command=weyl-sum\ngeometry=circle\ntau=-1\nlambda_max=10");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("tau") != std::string::npos);
    }

    // missing m for the torus
    CHECK_THROWS_AS(parse_config("command=weyl-sum\ngeometry=torus\ntau=0.5\nlambda_max=10"),
                    ConfigError);

    // unknown keys carry the line number
    try {
        parse_config("command=weyl-sum\n# comment\nbogus_key=3");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_config("command=weyl-sum\ngeometry=klein\ntau=0.5"), ConfigError);
    CHECK_THROWS_AS(parse_config("geometry=circle\ntau=0.5\nlambda_max=1"), ConfigError);
    // overflow guard on the damped weights
    CHECK_THROWS_AS(
        parse_config("command=weyl-sum\ngeometry=circle\ntau=2.0\nlambda_max=400"),
        ConfigError);
    // comments and blank lines are fine
    const auto cfg = parse_config("# a comment\n\ncommand=verify-all\n");
    CHECK(cfg.command == "verify-all");
}

TEST_CASE("matrix file round trip and classify run") {
    TempDir tmp;
    const fs::path file = tmp.path / "rot.mat";
    {
        std::ofstream out(file);
        out << "d=1\n0.877582561890373 -0.479425538604203\n0.479425538604203 "
               "0.877582561890373\n";
    }
    const Eigen::MatrixXd m = read_matrix_file(file.string());
    CHECK(m(0, 0) == doctest::Approx(std::cos(0.5)));

    RunConfig cfg;
    cfg.command = "classify";
    cfg.matrix_file = file.string();
    cfg.out = (tmp.path / "cls").string();
    std::ostringstream log;
    CHECK(run(cfg, log) == 0);
    const std::string summary = slurp(tmp.path / "cls" / "summary.txt");
    CHECK(summary.find("class: elliptic") != std::string::npos);
    const auto alpha_pos = summary.find("alpha_0: ");
    REQUIRE(alpha_pos != std::string::npos);
    CHECK(std::stod(summary.substr(alpha_pos + 9)) == doctest::Approx(0.5).epsilon(1e-12));
    const std::string csv = slurp(tmp.path / "cls" / "classify.csv");
    CHECK(csv.find("n,re_G,im_G,abs_G") == 0);

    // malformed header
    const fs::path bad = tmp.path / "bad.mat";
    std::ofstream(bad) << "rows=2\n1 0\n0 1\n";
    CHECK_THROWS_AS(read_matrix_file(bad.string()), ConfigError);
}

TEST_CASE("identical configuration gives byte-identical output") {
    TempDir tmp;
    RunConfig cfg;
    cfg.command = "weyl-sum";
    cfg.geometry = geom::Geometry::Torus;
    cfg.m = 2;
    cfg.tau = 0.5;
    cfg.lambda_max = 40.0;
    cfg.grid_points = 200;
    cfg.workers = 2;
    std::ostringstream log;
    cfg.out = (tmp.path / "a").string();
    REQUIRE(run(cfg, log) == 0);
    cfg.out = (tmp.path / "b").string();
    REQUIRE(run(cfg, log) == 0);
    CHECK(slurp(tmp.path / "a" / "weyl-sum.csv") == slurp(tmp.path / "b" / "weyl-sum.csv"));

    // CSV schema as documented
    const std::string csv = slurp(tmp.path / "a" / "weyl-sum.csv");
    CHECK(csv.find("lambda,P_tau,model,residual") == 0);
    // summary carries the fitted constant with its calibration window
    const std::string summary = slurp(tmp.path / "a" / "summary.txt");
    CHECK(summary.find("fitted_c") != std::string::npos);
    CHECK(summary.find("fit_window_lo") != std::string::npos);
    CHECK(summary.find("worker_count") != std::string::npos);
}

TEST_CASE("flag overrides and config file loading") {
    TempDir tmp;
    const fs::path file = tmp.path / "run.cfg";
    std::ofstream(file) << "command=weyl-sum\ngeometry=circle\ntau=0.5\nlambda_max=100\n";
    std::string cfg_flag = "--config";
    std::string cfg_path = file.string();
    std::string override1 = "lambda_max=50";
    char* argv[] = {const_cast<char*>("gweyl"), cfg_flag.data(), cfg_path.data(),
                    override1.data()};
    const auto cfg = parse_args(4, argv);
    CHECK(cfg.lambda_max == 50.0);
    CHECK(cfg.tau == 0.5);
}

TEST_CASE("qfunc and extract commands produce their documented outputs") {
    TempDir tmp;
    std::ostringstream log;

    RunConfig qf;
    qf.command = "qfunc";
    qf.geometry = geom::Geometry::Circle;
    qf.tau = 0.5;
    qf.lambda_max = 3.0;
    qf.grid_points = 60;
    qf.abel_terms = 20000;
    qf.out = (tmp.path / "qf").string();
    REQUIRE(run(qf, log) == 0);
    CHECK(slurp(tmp.path / "qf" / "qfunc.csv").find("lambda,q_abel,closed_form,residual") == 0);
    CHECK(slurp(tmp.path / "qf" / "summary.txt").find("closed_form_constant") !=
          std::string::npos);

    RunConfig ex;
    ex.command = "extract";
    ex.geometry = geom::Geometry::Circle;
    ex.tau = 0.5;
    ex.lambda_max = 260.0;
    ex.lambda = 160.0;
    ex.lambda_calib = 80.0;
    ex.n = 1;
    ex.out = (tmp.path / "ex").string();
    REQUIRE(run(ex, log) == 0);
    const std::string csv = slurp(tmp.path / "ex" / "extract.csv");
    CHECK(csv.find("n,re,im,magnitude") == 0);
    // circle coefficient magnitude is 1
    const auto last_comma = csv.rfind(',');
    const double mag = std::stod(csv.substr(last_comma + 1));
    CHECK(mag == doctest::Approx(1.0).epsilon(1e-6));
}
