#include <iostream>

#include "washprob/cli.hpp"

int main(int argc, char** argv) {
  return washprob::cli::run(argc, argv, std::cout, std::cerr);
}
