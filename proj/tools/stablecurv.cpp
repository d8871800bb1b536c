#include <iostream>

#include "stablecurv/cli.hpp"

int main(int argc, char** argv) {
  return stablecurv::cli::run(argc, argv, std::cout, std::cerr);
}
