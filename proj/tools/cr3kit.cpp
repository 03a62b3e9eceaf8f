#include <iostream>
#include <string>
#include <vector>

#include "cr3kit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cr3kit::cli::run_cli(args, std::cout, std::cerr);
}
