#include <iostream>

#include "rmab/cli.hpp"

int main(int argc, char** argv) { return rmab::cli::run(argc, argv, std::cout, std::cerr); }
