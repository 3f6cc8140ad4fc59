#include <iostream>

#include "dimtower/cli.hpp"

int main(int argc, char **argv) { return dimtower::cli::run(argc, argv, std::cout, std::cerr); }
