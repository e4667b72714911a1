#include <iostream>
#include <string>
#include <vector>

#include "thermoent_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return thermoent::cli::run(args, std::cout, std::cerr);
}
