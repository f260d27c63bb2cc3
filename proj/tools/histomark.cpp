#include <iostream>
#include <string>
#include <vector>

#include "histomark/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return histomark::run_cli(args, std::cout, std::cerr);
}
