#include <iostream>

#include "soliton/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return soliton::run_cli(args, std::cout, std::cerr);
}
