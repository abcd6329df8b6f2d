#pragma once

#include <string>
#include <vector>

#include "gfnoma/config.hpp"
#include "gfnoma/rng.hpp"

namespace gfnoma {

// Activation instants for the whole population, sorted ascending.
// UE ids are the indices into `times` after sorting.
struct ActivationSchedule {
  std::vector<double> times;  // seconds, in [0, horizon_s]
  double horizon_s = 0.0;

  int n_ues() const { return static_cast<int>(times.size()); }
};

// Time-limited Beta density on [0, T]:
//   p(tau) = tau^(a-1) (T-tau)^(b-1) / (T^(a+b-1) B(a,b)).
// Throws if tau is outside [0, T].
double beta_pdf(double tau, const SimConfig& cfg);

// Tabulated CDF of beta_pdf with linear interpolation between knots.
// 512 intervals, each integrated with a refined midpoint rule (so the
// endpoints of densities with a<1 or b<1 are never evaluated).
class BetaCdf {
 public:
  explicit BetaCdf(const SimConfig& cfg);

  // Inverse CDF: maps u in [0,1) to an activation instant in [0, T].
  double invert(double u) const;

 private:
  std::vector<double> cdf_;  // cdf_[i] = P(tau <= i*T/n), cdf_[n] = 1
  double horizon_s_;
};

// One activation per UE, i.i.d. from the Beta profile, then sorted.
ActivationSchedule sample_activations(const SimConfig& cfg, RngStream& rng);

// UEs whose activation fell in (from_tti, to_tti] (TTI units).
std::vector<int> arrivals_in_window(const ActivationSchedule& s,
                                    double from_tti, double to_tti,
                                    const SimConfig& cfg);

// Half-open index range [first, last) of the same window; the cheap form
// used by the per-RTT loop.
std::pair<int, int> arrival_range(const ActivationSchedule& s, double from_tti,
                                  double to_tti, const SimConfig& cfg);

// Two-column audit export: ue_id, activation_s.
void export_schedule_csv(const ActivationSchedule& s, const std::string& path);

}  // namespace gfnoma
