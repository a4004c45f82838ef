// Runs acceptance criteria 1-10 and prints one PASS/FAIL line for each.
// Usage: acceptance [small|full] [id...]

#include <cstdio>
#include <iostream>
#include <string>

#include "fimag/acceptance.hpp"
#include "fimag/error.hpp"

int main(int argc, char** argv) {
  using namespace fimag;
  try {
    Scale scale = argc > 1 ? parse_scale(argv[1]) : Scale::full;
    std::vector<int> only;
    for (int i = 2; i < argc; ++i) only.push_back(std::stoi(argv[i]));
    bool all = true;
    run_acceptance(scale, only, [&](const CriterionResult& r) {
      all = all && r.passed;
      std::printf("%s %2d %-28s %8.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                  r.detail.c_str());
      std::fflush(stdout);
    });
    return all ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "acceptance: " << e.what() << "\n";
    return 2;
  }
}
