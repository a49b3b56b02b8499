#include <iostream>

#include "slmsrl1/cli.hpp"

int main(int argc, char** argv) { return slmsrl1::run_cli(argc, argv, std::cout, std::cerr); }
