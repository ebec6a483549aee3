#include <iostream>
#include <string>
#include <vector>

#include "loccx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return loccx::cli::run(args, std::cout, std::cerr);
}
