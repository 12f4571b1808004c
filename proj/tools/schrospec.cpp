#include <iostream>

#include "schrospec/cli.hpp"

int main(int argc, char** argv) {
    return schrospec::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
