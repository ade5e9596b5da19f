#include <iostream>
#include <string>
#include <vector>

#include "plspower/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return plspower::cli::run(args, std::cout, std::cerr);
}
