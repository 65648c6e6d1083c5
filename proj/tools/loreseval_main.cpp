#include <iostream>
#include <string>
#include <vector>

#include "loreseval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return loreseval::cli::run(args, std::cout, std::cerr);
}
