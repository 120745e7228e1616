// Command-line front end: tempered Weyl sums, Husimi distributions, and the
// verification suite on the model geometries.
//
//   gweyl --config run.cfg [key=value ...]
//   gweyl command=weyl-sum geometry=circle tau=0.5 lambda_max=100
//   gweyl command=verify-all
//
// Configuration is flat key=value text ('#' comments); flags mirror the keys
// and override the file. Outputs: <out>/<command>.csv and <out>/summary.txt.
#include <iostream>

#include "grauert/cliconfig.hpp"

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: gweyl [--config FILE] [key=value ...]\n"
                     "commands: classify qfunc weyl-sum husimi l2norm smooth extract beam "
                     "verify-all\n"
                     "example: gweyl command=weyl-sum geometry=circle tau=0.5 lambda_max=100\n";
        return 1;
    }
    try {
        const grauert::cli::RunConfig cfg = grauert::cli::parse_args(argc, argv);
        return grauert::cli::run(cfg, std::cout);
    } catch (const grauert::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
