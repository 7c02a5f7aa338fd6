#include "wittenlab_cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return wittenlab::cli::run(argc, argv, std::cout, std::cerr);
}
