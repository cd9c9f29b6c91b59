#include <iostream>

#include "vlac/cli/app.hpp"

int main(int argc, char** argv) {
  return vlac::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
