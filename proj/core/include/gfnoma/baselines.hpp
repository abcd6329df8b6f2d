#pragma once

#include <vector>

#include "gfnoma/config.hpp"
#include "gfnoma/env.hpp"

namespace gfnoma {

// Load-estimation configurator: picks the CTU count from closed-form
// occupancy expectations with a trend-following load estimate, keeping
// the repetition value fixed. It deliberately knows nothing about
// latency budgets or SIC.
struct LeState {
  double prev_estimate = 0.0;  // estimate for the RTT before last
  double prev_delta = 0.0;
  int prev_c = 0;  // CTU count the last observation was made under
  int fixed_k = 8;
  bool primed = false;
};

// Expected idle CTUs when n UEs draw uniformly from c: c*(1-1/c)^n.
double le_expected_idle(int c, double n);

// Inverse of the idle expectation; v_ic is clamped to [0.5, c-0.5]
// before the logarithm, which removes both singularities.
double le_invert(double v_ic, int c);

// Next-RTT load estimate from the last observed idle and collision
// counts: invert the idle count, extrapolate the trend, floor at twice
// the collision count. First call returns the defined start estimate.
double le_predict(LeState& state, double v_ic_obs, double v_cc_obs);

// Expected singleton UEs: n*(1-1/c)^(n-1).
double le_expected_success(int c, double n);

// argmax over c_set of the singleton expectation; ties -> smallest c.
int le_choose_c(double n, const std::vector<int>& c_set);

// The constant (K=8, C=48) comparison policy; throws if either value is
// not in the configured action sets.
Action fixed_policy_action(const SimConfig& cfg);

}  // namespace gfnoma
