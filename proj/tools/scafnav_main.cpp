#include <iostream>

#include "scafnav/cli.h"

int main(int argc, char **argv) {
  return scafnav::run_cli(argc, argv, std::cout, std::cerr);
}
