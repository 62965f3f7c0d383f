#include <iostream>
#include <string>
#include <vector>

#include "higherar/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return higherar::run_cli(args, std::cout, std::cerr);
}
