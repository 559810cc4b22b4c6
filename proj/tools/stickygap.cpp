#include <iostream>
#include <string>
#include <vector>

#include "stickygap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return stickygap::cli::run(args, std::cout, std::cerr);
}
