#include <cstring>
#include <iostream>

#include "support/acceptance.hpp"

int main(int argc, char** argv) {
  acceptance::Options options;
  if (argc > 1 && std::strcmp(argv[1], "--quick") == 0) options.budget = acceptance::Budget::quick;
  int failures = 0;
  for (int id = 1; id <= acceptance::kCriteria; ++id) {
    const auto r = acceptance::run_criterion(id, options);
    std::cout << acceptance::format_result(r) << std::flush;
    failures += !r.passed;
  }
  std::cout << (failures ? "acceptance: FAILED " : "acceptance: all ") << (failures ? failures : acceptance::kCriteria)
            << (failures ? " criteria\n" : " criteria passed\n");
  return failures ? 1 : 0;
}
