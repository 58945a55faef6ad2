#include <iostream>

#include "orthomorse/cli.hpp"

int main(int argc, char** argv) { return orthomorse::cli::run(argc, argv, std::cout, std::cerr); }
