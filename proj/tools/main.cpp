#include <iostream>
#include <string>
#include <vector>

#include "lfwp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lfwp::cli::run(args, std::cout, std::cerr);
}
