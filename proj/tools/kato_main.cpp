#include <iostream>
#include <string>
#include <vector>

#include "kato/io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kato::run_cli(args, std::cout, std::cerr);
}
