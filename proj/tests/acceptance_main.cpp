// Acceptance gate: runs the packaged verification checks and prints one
// pass/fail line per criterion, each carrying the measured values and the
// thresholds they are held against.  With --criterion N only that check
// runs.  Exits nonzero when any executed check fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "sairs/verify.hpp"

namespace {

void print(const sairs::CriterionResult& r) {
  std::cout << (r.passed ? "[PASS]" : "[FAIL]") << " criterion " << r.id
            << " (" << r.name << "): " << r.detail << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--criterion" && k + 1 < argc) {
      only = std::atoi(argv[++k]);
    } else if (arg == "--help" || arg == "-h") {
      std::cout << "usage: sairs_acceptance [--criterion N]\n"
                   "Runs the packaged verification checks (all ten by default).\n";
      return 0;
    } else {
      std::cerr << "unknown argument: " << arg << "\n";
      return 2;
    }
  }

  if (only != 0) {
    if (only < 1 || only > 10) {
      std::cerr << "criterion id must be in 1..10\n";
      return 2;
    }
    const sairs::CriterionResult r = sairs::run_criterion(only);
    print(r);
    return r.passed ? 0 : 1;
  }

  const std::vector<sairs::CriterionResult> results = sairs::run_verification();
  bool all_passed = true;
  for (const sairs::CriterionResult& r : results) {
    print(r);
    all_passed = all_passed && r.passed;
  }
  std::cout << (all_passed ? "all criteria passed" : "some criteria FAILED")
            << "\n";
  return all_passed ? 0 : 1;
}
