#include <iostream>
#include <string>
#include <vector>

#include "upcache/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return upcache::cli::execute_command(args, std::cout, std::cerr);
}
