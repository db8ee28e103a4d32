#include <iostream>

#include "permrf/cli.hpp"

int main(int argc, char** argv) {
  return permrf::cli::run(argc, argv, std::cout, std::cerr);
}
