#include <iostream>
#include <string>
#include <vector>

#include "rtsl_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rtsl::cli::run_command(args, std::cout, std::cerr);
}
