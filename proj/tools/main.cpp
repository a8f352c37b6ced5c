#include <iostream>
#include <string>
#include <vector>

#include "gpcalc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gpcalc::cli::execute(args, std::cout, std::cerr);
}
