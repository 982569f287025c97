#include <iostream>
#include <string>
#include <vector>

#include "phasespace/cli.hpp"

int main(int argc, char** argv) {
  phasespace::cli::Hooks hooks;
#ifdef PHASESPACE_CORRUPT_BOUND
  // Test-only build: inflate every geometric bound so `sample` must report
  // violations.
  hooks.bound_transform = [](double bound) { return 1e6 * bound + 1.0; };
#endif
  return phasespace::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                              std::cerr, hooks);
}
