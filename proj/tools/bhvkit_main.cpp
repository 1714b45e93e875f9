#include <iostream>
#include <string>
#include <vector>

#include "bhv/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bhv::RunCli(args, std::cout, std::cerr);
}
