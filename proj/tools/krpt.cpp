#include <iostream>

#include "krpt/cli/app.hpp"

int main(int argc, char** argv) { return krpt::cli::run_cli(argc, argv, std::cout, std::cerr); }
