#include <iostream>

#include "genfrac/cli.hpp"

int main(int argc, char** argv) { return genfrac::run_cli(argc, argv, std::cout, std::cerr); }
