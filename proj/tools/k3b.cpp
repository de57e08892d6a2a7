#include <iostream>

#include "k3b/cli.hpp"

int main(int argc, char** argv) {
  const k3b::CliOutput r = k3b::run_cli(std::vector<std::string>(argv + 1, argv + argc));
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
