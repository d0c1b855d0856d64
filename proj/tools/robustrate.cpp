#include <iostream>
#include <string>
#include <vector>

#include "robustrate/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return robustrate::cli::run(args, std::cout, std::cerr);
}
