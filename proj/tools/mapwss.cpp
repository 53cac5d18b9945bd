#include <iostream>

#include "mapwss/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mapwss::run(args, std::cout, std::cerr);
}
