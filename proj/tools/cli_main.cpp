#include <iostream>

#include "itx/cli.hpp"

int main(int argc, char** argv) {
  return itx::run_cli(argc, argv, std::cout, std::cerr);
}
