#include <iostream>
#include <string>
#include <vector>

#include "nlvar_cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return nlvar::cli::run(args, std::cout, std::cerr);
}
