#include <iostream>
#include <vector>

#include "qcas/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qcas::run_command(args, std::cout, std::cerr);
}
