#include <iostream>

#include "pgq2/cli.hpp"

int main(int argc, char** argv) { return pgq2::cli::run(argc, argv, std::cout, std::cerr); }
