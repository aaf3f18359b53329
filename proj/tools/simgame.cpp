#include <iostream>

#include "simgame/simgame.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return simgame::run_command(args, std::cout, std::cerr);
}
