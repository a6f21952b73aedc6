#include <iostream>

#include "dgc/cli.hpp"

int main(int argc, char** argv) {
  return dgc::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
