#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "romclose/pipeline.hpp"

int main(int argc, char** argv) {
  romclose::init_logging();
  return doctest::Context(argc, argv).run();
}
