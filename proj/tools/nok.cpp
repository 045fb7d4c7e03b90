#include "nok/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nok::run_cli(argc, argv, std::cout, std::cerr); }
