#include <iostream>

#include "rmc/cli.hpp"

int main(int argc, char** argv) {
  return rmc::cli::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
