#include <iostream>

#include "chord/cli.hpp"

int main(int argc, char** argv) {
  chord::configure_logging();
  return chord::run_cli({argv, argv + argc}, std::cout, std::cerr);
}
