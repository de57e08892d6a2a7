#pragma once

#include <string>
#include <vector>

#include "k3b/rational.hpp"

namespace k3b {

struct CliOutput {
  int exit_code = 0;  // 0 ok, 1 a certificate or computation failed, 2 usage or input error
  std::string out;
  std::string err;
};

/// Runs one k3b command; `args` excludes the program name.
CliOutput run_cli(const std::vector<std::string>& args);

/// Parses sums like "e1+l1", "2e1-1/2*l2" or "-e2+f" into a vector of the
/// two-class lattice T + Q.l1 + Q.l2 of T-rank `t_rank` (f = l1 + l2).
/// Throws ParseError.
QVector parse_class_expr(const std::string& text, size_t t_rank);

}  // namespace k3b
