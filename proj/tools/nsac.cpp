#include <iostream>

#include "nsac/cli.hpp"

int main(int argc, char** argv) { return nsac::cli_main(argc, argv, std::cout, std::cerr); }
