#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gfnoma/sic.hpp"
#include "gfnoma/valuenet.hpp"

namespace gfnoma {

// Reference implementations kept deliberately naive and separate from
// the production path; the verification suites compare the two.

// Occupancy counting straight off an occupancy array.
struct OccupancyCounts {
  int v_ic = 0;
  int v_sc = 0;
  int v_cc = 0;
  std::map<int, std::vector<int>> occupants;  // ctu -> ues (draw order)
};

OccupancyCounts brute_force_occupancy(
    const std::vector<std::pair<int, int>>& choices, int c_total);

// Literal replays of the two per-repetition SIC procedures, with their
// own sort and per-stage interference sums.
DecodeResult sic_oracle_k_repetition(const RbRound& round,
                                     const SimConfig& cfg,
                                     const FadingFn& fading);
DecodeResult sic_oracle_proactive(const RbRound& round, const SimConfig& cfg,
                                  const FadingFn& fading);

bool decode_results_equal(const DecodeResult& a, const DecodeResult& b);

// Central-difference check of td_gradient over every weight and bias.
// The bootstrap targets are computed once and frozen, matching the
// constant-target semantics of the analytic gradient. A stencil is
// only meaningful while the ReLU activation pattern is constant across
// it, so probes whose pattern flips are retried with a smaller h and
// skipped (counted) if it keeps flipping.
struct FdCheckResult {
  double max_rel_err = 0.0;
  long probes = 0;
  long reprobed = 0;
  long skipped = 0;
};

FdCheckResult fd_check_td_gradient(const ValueNet& online,
                                   const ValueNet& target,
                                   const Minibatch& batch, double gamma,
                                   bool ddqn, double h = 1e-5);

// Composite Simpson quadrature.
double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals);

}  // namespace gfnoma
