#include <iostream>

#include "negtrans/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return negtrans::run_cli(argc, argv, std::cout, std::cerr);
}
