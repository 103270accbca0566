#include <iostream>
#include <string>
#include <vector>

#include "pnfield/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pnfield::cli::run(args, std::cout, std::cerr);
}
