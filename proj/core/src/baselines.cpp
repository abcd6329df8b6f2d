#include "gfnoma/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gfnoma {

double le_expected_idle(int c, double n) {
  if (c < 1 || n < 0) throw std::invalid_argument("le_expected_idle: bad args");
  return c * std::pow(1.0 - 1.0 / c, n);
}

double le_invert(double v_ic, int c) {
  if (c < 2) throw std::invalid_argument("le_invert: need c >= 2");
  const double v = std::clamp(v_ic, 0.5, c - 0.5);
  return std::log(v / c) / std::log(1.0 - 1.0 / c);
}

double le_predict(LeState& state, double v_ic_obs, double v_cc_obs) {
  if (!state.primed) {
    // Defined start: estimate 0 with zero trend, whatever the pool says.
    state.primed = true;
    state.prev_estimate = 0.0;
    state.prev_delta = 0.0;
    return std::max(2.0 * v_cc_obs, 0.0);
  }
  const double n_last = le_invert(v_ic_obs, state.prev_c);
  const double delta = n_last - state.prev_estimate;
  const double n_next = std::max(2.0 * v_cc_obs, n_last + delta);
  state.prev_estimate = n_last;
  state.prev_delta = delta;
  return n_next;
}

double le_expected_success(int c, double n) {
  if (c < 1 || n < 0)
    throw std::invalid_argument("le_expected_success: bad args");
  if (n == 0.0) return 0.0;
  return n * std::pow(1.0 - 1.0 / c, n - 1.0);
}

int le_choose_c(double n, const std::vector<int>& c_set) {
  if (c_set.empty()) throw std::invalid_argument("le_choose_c: empty c_set");
  int best = c_set.front();
  double best_v = le_expected_success(best, n);
  for (size_t i = 1; i < c_set.size(); ++i) {
    const double v = le_expected_success(c_set[i], n);
    if (v > best_v) {
      best = c_set[i];
      best_v = v;
    }
  }
  return best;
}

Action fixed_policy_action(const SimConfig& cfg) {
  const Action a{8, 48};
  if (std::find(cfg.k_set.begin(), cfg.k_set.end(), a.k) == cfg.k_set.end())
    throw std::invalid_argument("fixed policy: K=8 not in k_set");
  if (std::find(cfg.c_set.begin(), cfg.c_set.end(), a.c) == cfg.c_set.end())
    throw std::invalid_argument("fixed policy: C=48 not in c_set");
  return a;
}

}  // namespace gfnoma
