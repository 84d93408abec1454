#include <iostream>

#include "sigmak/cli.hpp"

int main(int argc, char** argv) { return sigmak::cli::run_cli(argc, argv, std::cout, std::cerr); }
