#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qsp/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int a = 1; a < argc; ++a) which.push_back(std::atoi(argv[a]));
  bool all = true;
  for (const auto& r : qsp::run_acceptance(which)) {
    std::printf("criterion %2d %s  %s (%.1fs): %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    all = all && r.passed;
  }
  return all ? 0 : 1;
}
