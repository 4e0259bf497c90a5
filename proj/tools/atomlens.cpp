#include <iostream>
#include <string>
#include <vector>

#include "atomlens/cli/app.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return atomlens::cli::run(args, std::cout, std::cerr);
}
