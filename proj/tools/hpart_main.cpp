#include <iostream>

#include "hpart/cli.hpp"

int main(int argc, char** argv) {
    return hpart::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
