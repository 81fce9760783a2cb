#include <iostream>

#include "dimerlab/cli.hpp"

int main(int argc, char** argv) { return dimerlab::cli::run(argc, argv, std::cout, std::cerr); }
