#include "paretokit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return paretokit::parse_and_run(argc, argv, std::cout, std::cerr);
}
