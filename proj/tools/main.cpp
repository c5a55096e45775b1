#include <iostream>

#include "inet/cli.hpp"

int main(int argc, char** argv) { return inet::run_cli(argc, argv, std::cout, std::cerr); }
