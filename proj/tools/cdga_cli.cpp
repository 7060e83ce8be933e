#include <cstdio>

#include "cdga/matrix.hpp"

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fprintf(stderr, "cdga: command-line interface under construction\n");
  return 3;
}
