#include "titskit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return titskit::cli::run(argc, argv, std::cout, std::cerr); }
