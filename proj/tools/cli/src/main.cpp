#include <iostream>

#include "hdecay_cli/cli.hpp"

int main(int argc, char** argv) {
  return hdecay::cli::main_entry(argc, argv, std::cout, std::cerr);
}
