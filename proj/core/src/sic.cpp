#include "gfnoma/sic.hpp"

#include <algorithm>

namespace gfnoma {

std::vector<int> sic_pass(
    const std::vector<std::pair<int, double>>& singleton_powers_w,
    const std::vector<double>& collision_powers_w, double noise_w,
    double gamma_th) {
  std::vector<std::pair<int, double>> order = singleton_powers_w;
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  double floor_w = noise_w;
  for (double p : collision_powers_w) floor_w += p;

  // suffix[s] = total power of singletons at stages >= s
  std::vector<double> suffix(order.size() + 1, 0.0);
  for (int s = static_cast<int>(order.size()) - 1; s >= 0; --s)
    suffix[s] = suffix[s + 1] + order[s].second;

  std::vector<int> decoded;
  for (size_t s = 0; s < order.size(); ++s) {
    const double denom = suffix[s + 1] + floor_w;
    if (order[s].second >= gamma_th * denom) {
      decoded.push_back(order[s].first);
    } else {
      break;
    }
  }
  return decoded;
}

namespace {

struct WorkingSets {
  std::vector<RbUe> singletons;
  std::vector<RbUe> collisions;
};

void run_pass(const WorkingSets& w, int k, const SimConfig& cfg,
              const FadingFn& fading, DecodeResult& result) {
  std::vector<std::pair<int, double>> singles;
  singles.reserve(w.singletons.size());
  const double ptx = cfg.tx_power_w();
  for (const RbUe& ue : w.singletons)
    singles.emplace_back(ue.ue_id, ptx * fading(ue.ue_id, k) * ue.pathgain);
  std::vector<double> coll;
  coll.reserve(w.collisions.size());
  for (const RbUe& ue : w.collisions)
    coll.push_back(ptx * fading(ue.ue_id, k) * ue.pathgain);

  for (int ue : sic_pass(singles, coll, cfg.noise_w(),
                         cfg.sinr_threshold_lin())) {
    if (!result.decoded_at.count(ue)) result.decoded_at[ue] = k;
  }
}

DecodeResult finalize(const RbRound& round, DecodeResult result) {
  for (const auto& [ue, k] : result.decoded_at) result.decoded.push_back(ue);
  for (const RbUe& ue : round.singleton_ues)
    if (!result.decoded_at.count(ue.ue_id)) result.failed.push_back(ue.ue_id);
  std::sort(result.decoded.begin(), result.decoded.end());
  std::sort(result.failed.begin(), result.failed.end());
  return result;
}

}  // namespace

DecodeResult decode_k_repetition(const RbRound& round, const SimConfig& cfg,
                                 const FadingFn& fading) {
  DecodeResult result;
  WorkingSets w{round.singleton_ues, round.collision_ues};
  for (int k = 1; k <= round.k_max; ++k) run_pass(w, k, cfg, fading, result);
  return finalize(round, std::move(result));
}

DecodeResult decode_proactive(const RbRound& round, const SimConfig& cfg,
                              const FadingFn& fading) {
  DecodeResult result;
  WorkingSets w{round.singleton_ues, round.collision_ues};
  for (int k = 1; k <= round.k_max; ++k) {
    if (k >= 4) {
      std::erase_if(w.singletons, [&](const RbUe& ue) {
        auto it = result.decoded_at.find(ue.ue_id);
        return it != result.decoded_at.end() && it->second <= k - 4;
      });
      w.collisions.clear();
    }
    run_pass(w, k, cfg, fading, result);
  }
  return finalize(round, std::move(result));
}

DecodeResult decode_round(const RbRound& round, const SimConfig& cfg,
                          const FadingFn& fading) {
  return cfg.scheme == Scheme::KRepetition
             ? decode_k_repetition(round, cfg, fading)
             : decode_proactive(round, cfg, fading);
}

}  // namespace gfnoma
