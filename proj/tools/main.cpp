#include <iostream>

#include "microgrid/cli.hpp"

int main(int argc, char** argv) { return microgrid::run_cli(argc, argv, std::cout, std::cerr); }
