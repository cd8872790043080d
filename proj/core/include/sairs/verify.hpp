#ifndef SAIRS_VERIFY_HPP
#define SAIRS_VERIFY_HPP

#include <string>
#include <vector>

namespace sairs {

/** Outcome of one packaged verification check.  `detail` always reports the
 *  measured values next to the thresholds they are held against. */
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/** Runs one check (1..10) against the built-in example configurations. */
CriterionResult run_criterion(int id);

/** Runs all ten checks in order.  Failures never throw; they are reported. */
std::vector<CriterionResult> run_verification();

std::string verify_json(const std::vector<CriterionResult>& results);

}  // namespace sairs

#endif
