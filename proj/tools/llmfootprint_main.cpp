#include <vector>

#include "llmfootprint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return llmfp::run_cli(args);
}
