#include <iostream>
#include <vector>

#include "covchan/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return covchan::run_cli(args, std::cout, std::cerr);
}
