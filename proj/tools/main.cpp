#include "oscquad/benchcli.hpp"

#include <iostream>

int main(int argc, char** argv) { return oscquad::cli::run_command(argc, argv, std::cout, std::cerr); }
