#include <iostream>

#include "pdacache/cli.hpp"

int main(int argc, char** argv) {
  return pdacache::run_cli({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
