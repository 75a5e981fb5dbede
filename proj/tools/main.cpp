#include <iostream>

#include "perbase/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return perbase::cli::run(args, std::cout, std::cerr);
}
