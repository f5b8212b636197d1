#include <iostream>
#include <string>
#include <vector>

#include "curvflow/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return curvflow::cli::run(args, std::cout, std::cerr);
}
