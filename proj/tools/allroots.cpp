#include "allroots/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return allroots::run_cli(argc, argv, std::cout, std::cerr); }
