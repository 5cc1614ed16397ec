#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return polyapprox::cli::run(argc, argv, std::cout, std::cerr, std::getenv("POLYAPPROX_SEED"));
}
