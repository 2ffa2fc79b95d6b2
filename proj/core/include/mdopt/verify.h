#pragma once

#include <string>
#include <vector>

#include "mdopt/problem.h"

namespace mdopt {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Full invariant battery for one problem: subgradient and Lipschitz
// certificates, constant validity, solver-output certificates against the
// reference optimum, and the restart contraction audit.  Requires an attached
// reference; expensive fixed-count runs are skipped above the step budget
// and reported as skipped passes.
std::vector<CheckResult> verify_problem(const Problem& problem);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace mdopt
