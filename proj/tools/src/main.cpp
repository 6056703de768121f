#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string batch;
  for (const auto& a : args) {
    if (a == "-") {
      batch.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
      break;
    }
  }
  const qhb::cli::RunResult result = qhb::cli::run(args, batch);
  std::cout << result.out << std::flush;
  std::cerr << result.err << std::flush;
  return result.exit_code;
}
