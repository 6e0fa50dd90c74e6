#include <iostream>
#include <string>
#include <vector>

#include "qfe/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qfe::cli::run(args, std::cout, std::cerr);
}
