#include <iostream>

#include "sisres/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sisres::run_cli(args, std::cout, std::cerr);
}
