#pragma once

#include <string>
#include <vector>

namespace kh {

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

// exit codes: 0 success, 1 check failure, 2 input/usage error
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace kh
