#include <iostream>
#include <string>
#include <vector>

#include "spectral_chroma/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return spectral_chroma::run_cli(args, std::cout, std::cerr);
}
