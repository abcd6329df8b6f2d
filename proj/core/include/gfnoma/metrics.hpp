#pragma once

#include <string>
#include <vector>

#include "gfnoma/env.hpp"
#include "gfnoma/policy.hpp"

namespace gfnoma {

struct EpisodeMetrics {
  int episode = 0;
  double total_reward = 0.0;
  int served = 0;
  int dropped = 0;
  int activated = 0;
  int steps = 0;
};

struct EvalResult {
  std::vector<EpisodeMetrics> episodes;
  std::vector<std::vector<StepRecord>> traces;  // one per episode

  double mean_served() const;
  double stddev_served() const;
};

// One greedy rollout; returns the metrics and leaves the trace in env.
EpisodeMetrics run_episode(GfNomaEnv& env, Policy& policy, int episode);

// n_episodes rollouts with episode indices offset..offset+n-1.
EvalResult evaluate(const SimConfig& cfg, Policy& policy, int n_episodes,
                    int episode_offset = 0);

// Fig-style per-TTI aggregation: steps are binned by the TTI at which
// their RTT starts, bucket sums are taken per episode and averaged over
// episodes.
struct BucketRow {
  long tti_bucket = 0;  // bucket start, TTIs
  double succ = 0.0;    // served (decoded singletons)
  double non_coll = 0.0;  // singleton UEs
  double coll = 0.0;      // UEs on collision CTUs
  double dec_fail = 0.0;  // singletons that failed decoding
};

std::vector<BucketRow> bucket_table(
    const std::vector<std::vector<StepRecord>>& traces, int bucket_ttis);

// Served count restricted to steps starting at or after `from_tti`,
// averaged per episode.
double mean_served_from(const EvalResult& r, long from_tti);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double ci_half = 0.0; // 95% normal half-width of the mean
};

Summary summarize(const std::vector<double>& xs);

}  // namespace gfnoma
