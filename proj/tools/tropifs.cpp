#include <iostream>

#include "tropifs/cli.hpp"

int main(int argc, char** argv) { return tropifs::run_cli(argc, argv, std::cout, std::cerr); }
