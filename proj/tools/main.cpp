#include <iostream>

#include "branchcover/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bcov::run_cli(args, std::cout, std::cerr);
}
