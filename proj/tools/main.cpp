#include <iostream>

#include "approxsym/cli.hpp"

int main(int argc, char** argv) { return approxsym::run_cli(argc, argv, std::cout, std::cerr); }
