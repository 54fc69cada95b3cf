#include <iostream>

#include "gradalg/cli.hpp"

int main(int argc, char **argv) { return gradalg::run_cli(argc, argv, std::cout, std::cerr); }
