#include <iostream>
#include <string>
#include <vector>

#include "blc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = blc::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
