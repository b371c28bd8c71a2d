#include <iostream>

#include "nsreg/cli.hpp"

int main(int argc, char** argv) { return nsreg::cli::run(argc, argv, std::cout, std::cerr); }
