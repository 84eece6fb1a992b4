#include <iostream>

#include "ridpolar/cli.hpp"

int main(int argc, char** argv) { return ridpolar::run_cli(argc, argv, std::cout, std::cerr); }
