#include <iostream>

#include "nevlab/cli.hpp"

int main(int argc, char** argv) { return nevlab::run_cli(argc, argv, std::cout, std::cerr); }
