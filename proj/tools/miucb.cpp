#include <iostream>
#include <string>
#include <vector>

#include "miucb/cli.hpp"

int main(int argc, char** argv) {
    return miucb::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
