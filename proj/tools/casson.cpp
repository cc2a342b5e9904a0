#include <iostream>

#include "casson/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return casson::cli_run(std::move(args), std::cout, std::cerr);
}
