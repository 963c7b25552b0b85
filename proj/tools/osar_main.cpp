#include <iostream>

#include "osar/cli.hpp"

int main(int argc, char** argv) {
  return osar::run_cli(argc, argv, std::cout, std::cerr);
}
