#include "lipdist/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lipdist::cli::run(argc, argv, std::cout, std::cerr); }
