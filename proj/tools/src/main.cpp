#include <iostream>

#include "blspec_cli/commands.hpp"

int main(int argc, char** argv) {
  return blspec::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
