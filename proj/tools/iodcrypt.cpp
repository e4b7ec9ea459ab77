#include <iostream>
#include <string>
#include <vector>

#include "iodc/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  const auto outcome = iodc::run_command(args);
  std::cout.write(outcome.stdout_payload.data(),
                  static_cast<std::streamsize>(outcome.stdout_payload.size()));
  std::cout.flush();
  if (!outcome.stderr_diagnostics.empty()) std::cerr << outcome.stderr_diagnostics;
  return outcome.exit_code;
}
