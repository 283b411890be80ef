#include <iostream>
#include <string>
#include <vector>

#include "oramod/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto r = oramod::cli::run(args);
  if (!r.wrote_file) std::cout << r.output;
  std::cerr << r.diagnostics;
  return r.exit_code;
}
