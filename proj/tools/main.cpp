#include <iostream>
#include <string>
#include <vector>

#include "cychom/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cychom::cli_main(std::move(args), std::cout, std::cerr);
}
