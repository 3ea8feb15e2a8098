#include <iostream>

#include "raincorr/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return raincorr::run_cli(args, std::cout, std::cerr);
}
