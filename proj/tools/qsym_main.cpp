#include <iostream>

#include "qsym/cli.hpp"

int main(int argc, char** argv) {
  return qsym::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
