#include <iostream>

#include "seqjcig/cli.hpp"

int main(int argc, char** argv) { return seqjcig::cli::run(argc, argv, std::cout, std::cerr); }
