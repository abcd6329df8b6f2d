#include "gfnoma/phy.hpp"

#include <stdexcept>

namespace gfnoma {

std::vector<UePhy> place_ues(const SimConfig& cfg, RngStream& rng) {
  std::vector<UePhy> out;
  out.reserve(cfg.n_ues);
  for (int i = 0; i < cfg.n_ues; ++i) {
    double r = cfg.cell_radius_m * std::sqrt(rng.next_unit());
    if (r < 1.0) r = 1.0;
    out.push_back(make_ue_phy(cfg, i, r));
  }
  return out;
}

double sinr(double signal_w, const std::vector<double>& interferers_w,
            double noise_w) {
  if (noise_w <= 0.0) throw std::invalid_argument("sinr: noise must be > 0");
  double denom = noise_w;
  for (double p : interferers_w) denom += p;
  return signal_w / denom;
}

}  // namespace gfnoma
