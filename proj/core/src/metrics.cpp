#include "gfnoma/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gfnoma {

EpisodeMetrics run_episode(GfNomaEnv& env, Policy& policy, int episode) {
  policy.begin_episode(episode);
  env.reset(episode);
  EpisodeMetrics m;
  m.episode = episode;
  while (!env.done()) {
    const Action a = policy.act(env);
    m.total_reward += env.step(a).reward;
  }
  m.served = static_cast<int>(env.served_total());
  m.dropped = static_cast<int>(env.dropped_total());
  m.activated = env.activated_total();
  m.steps = env.steps_taken();
  return m;
}

EvalResult evaluate(const SimConfig& cfg, Policy& policy, int n_episodes,
                    int episode_offset) {
  GfNomaEnv env(cfg);
  EvalResult r;
  r.episodes.reserve(n_episodes);
  r.traces.reserve(n_episodes);
  for (int i = 0; i < n_episodes; ++i) {
    r.episodes.push_back(run_episode(env, policy, episode_offset + i));
    r.traces.push_back(env.trace());
  }
  return r;
}

double EvalResult::mean_served() const {
  if (episodes.empty()) return 0.0;
  double s = 0.0;
  for (const auto& e : episodes) s += e.served;
  return s / episodes.size();
}

double EvalResult::stddev_served() const {
  if (episodes.size() < 2) return 0.0;
  const double m = mean_served();
  double acc = 0.0;
  for (const auto& e : episodes) acc += (e.served - m) * (e.served - m);
  return std::sqrt(acc / (episodes.size() - 1));
}

std::vector<BucketRow> bucket_table(
    const std::vector<std::vector<StepRecord>>& traces, int bucket_ttis) {
  std::map<long, BucketRow> acc;
  for (const auto& trace : traces) {
    for (const StepRecord& s : trace) {
      const long b = s.tti_clock / bucket_ttis * bucket_ttis;
      BucketRow& row = acc[b];
      row.tti_bucket = b;
      row.succ += s.v_sd;
      row.non_coll += s.v_sc;
      row.coll += s.n_transmitting - s.v_sc;
      row.dec_fail += s.v_ud;
    }
  }
  std::vector<BucketRow> out;
  out.reserve(acc.size());
  const double n = traces.empty() ? 1.0 : static_cast<double>(traces.size());
  for (auto& [b, row] : acc) {
    row.succ /= n;
    row.non_coll /= n;
    row.coll /= n;
    row.dec_fail /= n;
    out.push_back(row);
  }
  return out;
}

double mean_served_from(const EvalResult& r, long from_tti) {
  if (r.traces.empty()) return 0.0;
  double total = 0.0;
  for (const auto& trace : r.traces)
    for (const StepRecord& s : trace)
      if (s.tti_clock >= from_tti) total += s.v_sd;
  return total / r.traces.size();
}

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= xs.size();
  if (xs.size() > 1) {
    double acc = 0.0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / (xs.size() - 1));
    s.ci_half = 1.96 * s.stddev / std::sqrt(static_cast<double>(xs.size()));
  }
  return s;
}

}  // namespace gfnoma
