#include <iostream>

#include "flm/cli.hpp"

int main(int argc, char** argv) {
  return flm::cli_main(argc, argv, std::cout, std::cerr);
}
