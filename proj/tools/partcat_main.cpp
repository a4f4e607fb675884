#include <string>
#include <vector>

#include "partcat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return partcat::run_cli(args);
}
