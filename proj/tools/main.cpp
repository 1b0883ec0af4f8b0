#include <iostream>

#include "bracelab_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bracelab::cli::run_cli(args, std::cout, std::cerr);
}
