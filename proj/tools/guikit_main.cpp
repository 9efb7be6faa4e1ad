#include <iostream>
#include <string>
#include <vector>

#include "guikit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return guikit::run_cli(args, std::cout, std::cerr);
}
