#include <iostream>

#include "invdom/cli.hpp"

int main(int argc, char** argv) { return invdom::run_cli(argc, argv, std::cout, std::cerr); }
