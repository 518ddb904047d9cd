#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "gml/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  bool color = std::getenv("GML_NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;
  return gml::cli::run(args, {std::cout, std::cerr, color});
}
