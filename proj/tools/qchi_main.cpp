#include <iostream>

#include "qchi/cli.hpp"

int main(int argc, char** argv) {
  return qchi::run_command_argv(argc, argv, std::cout, std::cerr);
}
