#include <string>
#include <vector>

#include "fewocc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fewocc::cli::run(args);
}
