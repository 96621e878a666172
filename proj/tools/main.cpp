#include <iostream>

#include "knotoid/cli.hpp"

int main(int argc, char** argv) {
  return knotoid::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
