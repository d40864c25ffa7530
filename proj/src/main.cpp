#include <iostream>
#include <vector>

#include "sp6flags/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sp6flags::run_cli(args, std::cout, std::cerr);
}
