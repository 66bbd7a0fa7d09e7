#include <string>
#include <vector>

#include "salc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return salc::run_cli(args);
}
