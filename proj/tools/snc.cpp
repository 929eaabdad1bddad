#include <iostream>

#include "snc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return snc::cli::run(args, std::cout, std::cerr);
}
