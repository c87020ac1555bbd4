#include <iostream>

#include "buml/cli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return buml::cli::run(args, std::cout, std::cerr);
}
