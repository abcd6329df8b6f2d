#pragma once

#include <cmath>
#include <vector>

#include "gfnoma/config.hpp"
#include "gfnoma/rng.hpp"

namespace gfnoma {

// Static per-UE radio state. Distances are drawn once per episode and
// UEs do not move afterwards.
struct UePhy {
  int ue_id = 0;
  double distance_m = 1.0;
  double pathgain = 1.0;  // distance^(-eta), cached
};

inline UePhy make_ue_phy(const SimConfig& cfg, int ue_id, double distance_m) {
  return {ue_id, distance_m, std::pow(distance_m, -cfg.pathloss_exp)};
}

// Uniform over the disk: r = R*sqrt(u), clamped to >= 1 m to keep the
// power law finite at the origin.
std::vector<UePhy> place_ues(const SimConfig& cfg, RngStream& rng);

// Rayleigh power gain: Exp(1), fresh per (UE, repetition, RTT).
inline double draw_fading(RngStream& rng) { return rng.next_exp1(); }

inline double received_power(const SimConfig& cfg, const UePhy& ue, double h) {
  return cfg.tx_power_w() * h * ue.pathgain;
}

// signal / (sum of interferers + noise), all in watts.
double sinr(double signal_w, const std::vector<double>& interferers_w,
            double noise_w);

}  // namespace gfnoma
