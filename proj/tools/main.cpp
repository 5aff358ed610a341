#include <iostream>

#include "mvbasis/cli.hpp"

int main(int argc, char** argv) { return mvbasis::cli::run(argc, argv, std::cout, std::cerr); }
