#include "gfnoma/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace gfnoma {

double beta_pdf(double tau, const SimConfig& cfg) {
  const double T = cfg.traffic_total_s;
  const double a = cfg.beta_alpha;
  const double b = cfg.beta_beta;
  if (tau < 0.0 || tau > T)
    throw std::invalid_argument("beta_pdf: tau outside [0, T]");
  const double log_beta =
      std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  const double norm = std::exp((a + b - 1.0) * std::log(T) + log_beta);
  return std::pow(tau, a - 1.0) * std::pow(T - tau, b - 1.0) / norm;
}

namespace {
constexpr int kCdfIntervals = 512;
constexpr int kSubSteps = 16;  // midpoint refinements per interval
}  // namespace

BetaCdf::BetaCdf(const SimConfig& cfg) : horizon_s_(cfg.traffic_total_s) {
  cdf_.assign(kCdfIntervals + 1, 0.0);
  const double h = horizon_s_ / kCdfIntervals;
  double acc = 0.0;
  for (int i = 0; i < kCdfIntervals; ++i) {
    double mass = 0.0;
    for (int j = 0; j < kSubSteps; ++j) {
      const double mid = (i + (j + 0.5) / kSubSteps) * h;
      mass += beta_pdf(mid, cfg);
    }
    acc += mass * h / kSubSteps;
    cdf_[i + 1] = acc;
  }
  // Normalize away the residual quadrature error.
  for (auto& v : cdf_) v /= acc;
  cdf_.back() = 1.0;
}

double BetaCdf::invert(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  int hi = static_cast<int>(it - cdf_.begin());
  if (hi <= 0) return 0.0;
  if (hi > kCdfIntervals) hi = kCdfIntervals;
  const int lo = hi - 1;
  const double span = cdf_[hi] - cdf_[lo];
  const double frac = span > 0.0 ? (u - cdf_[lo]) / span : 0.0;
  return (lo + frac) * horizon_s_ / kCdfIntervals;
}

ActivationSchedule sample_activations(const SimConfig& cfg, RngStream& rng) {
  ActivationSchedule s;
  s.horizon_s = cfg.traffic_total_s;
  s.times.reserve(cfg.n_ues);
  const BetaCdf cdf(cfg);
  for (int i = 0; i < cfg.n_ues; ++i) s.times.push_back(cdf.invert(rng.next_unit()));
  std::sort(s.times.begin(), s.times.end());
  return s;
}

std::pair<int, int> arrival_range(const ActivationSchedule& s, double from_tti,
                                  double to_tti, const SimConfig& cfg) {
  const double tti_s = cfg.tti_ms * 1e-3;
  const double lo = from_tti * tti_s;
  const double hi = to_tti * tti_s;
  auto first = std::upper_bound(s.times.begin(), s.times.end(), lo);
  auto last = std::upper_bound(s.times.begin(), s.times.end(), hi);
  return {static_cast<int>(first - s.times.begin()),
          static_cast<int>(last - s.times.begin())};
}

std::vector<int> arrivals_in_window(const ActivationSchedule& s,
                                    double from_tti, double to_tti,
                                    const SimConfig& cfg) {
  if (!(from_tti < to_tti))
    throw std::invalid_argument("arrivals_in_window: from_tti must be < to_tti");
  auto [first, last] = arrival_range(s, from_tti, to_tti, cfg);
  std::vector<int> out;
  out.reserve(last - first);
  for (int i = first; i < last; ++i) out.push_back(i);
  return out;
}

void export_schedule_csv(const ActivationSchedule& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "ue_id,activation_s\n";
  out.precision(17);
  for (int i = 0; i < s.n_ues(); ++i) out << i << "," << s.times[i] << "\n";
}

}  // namespace gfnoma
