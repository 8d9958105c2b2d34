#include <string>
#include <vector>

#include "csreg/cli_runner.hpp"

int main(int argc, char** argv) {
  return csreg::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
