#include <iostream>

#include "umbral/cli.hpp"

int main(int argc, char** argv) { return umbral::cli::run(argc, argv, std::cout, std::cerr); }
