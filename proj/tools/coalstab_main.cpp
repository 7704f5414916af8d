#include <iostream>
#include <string>
#include <vector>

#include "coalstab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coalstab::run_cli(args, std::cout, std::cerr);
}
