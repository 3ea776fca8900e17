#include <iostream>
#include <string>
#include <vector>

#include "presbias/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return presbias::cli::run(args, std::cout, std::cerr);
}
