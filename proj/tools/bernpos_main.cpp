#include "bernpos/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bernpos::cli::run(argc, argv, std::cout, std::cerr); }
