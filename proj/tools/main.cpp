#include <iostream>

#include "pglatlas/cli.hpp"

int main(int argc, char** argv) { return pglatlas::run_cli(argc, argv, std::cout, std::cerr); }
