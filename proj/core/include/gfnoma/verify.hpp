#pragma once

#include <string>
#include <vector>

namespace gfnoma {

struct SuiteResult {
  std::string name;
  long cases = 0;
  bool pass = false;
  std::string detail;
};

// The self-check suites behind the `verify` subcommand: collision
// classification vs exhaustive enumeration, SIC vs the step-list
// replay, the analytic TD gradient vs central differences, the
// load-estimation closed forms, and the traffic density normalization.
std::vector<SuiteResult> run_verification();

}  // namespace gfnoma
