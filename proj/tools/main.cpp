#include <iostream>

#include "fracburgers/app.hpp"

int main(int argc, char** argv) {
  return fracburgers::run_main(argc, argv, std::cout, std::cerr);
}
