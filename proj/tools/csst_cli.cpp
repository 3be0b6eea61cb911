#include <iostream>

#include "csst/cli.hpp"

int main(int argc, char** argv) { return csst::cli::run(argc, argv, std::cout, std::cerr); }
