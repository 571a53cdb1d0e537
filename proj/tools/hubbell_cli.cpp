#include <iostream>
#include <string>
#include <vector>

#include "hubbell/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hubbell::run_cli(std::move(args), std::cout, std::cerr);
}
