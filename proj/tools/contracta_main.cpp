#include <iostream>

#include "contracta/cli/runner.hpp"

int main(int argc, char** argv) { return contracta::cli::run_cli(argc, argv, std::cout, std::cerr); }
