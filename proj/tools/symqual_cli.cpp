#include <iostream>

#include "symqual/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return symqual::cli::run(args, std::cout, std::cerr);
}
