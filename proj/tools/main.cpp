#include <iostream>

#include "ucboost/cli.hpp"

int main(int argc, char** argv) { return ucboost::run_cli(argc, argv, std::cout, std::cerr); }
