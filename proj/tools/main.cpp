#include "cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    const std::vector<std::string> args(argv + 1, argv + argc);
    return chshlab::cli::run_cli(args, std::cout, std::cerr, std::getenv(chshlab::cli::kFormatEnvVar));
}
