#include <iostream>

#include "twistrank_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return twistrank::cli::run(args, std::cout, std::cerr);
}
