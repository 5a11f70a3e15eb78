#include "nadiv/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return nadiv::cli::run(argc, argv, std::cout, std::cerr); }
