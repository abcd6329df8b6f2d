#pragma once

#include <string>
#include <vector>

#include "gfnoma/agent.hpp"
#include "gfnoma/metrics.hpp"

namespace gfnoma {

// All writers emit a fixed header row and locale-independent %.17g
// numbers, so identical runs produce byte-identical files.
std::string format_double(double v);

void write_curve_csv(const std::vector<EpisodeRow>& curve,
                     const std::string& path);
void write_episodes_csv(const std::vector<EpisodeMetrics>& eps,
                        const std::string& path);
void write_bucket_csv(const std::vector<BucketRow>& rows,
                      const std::string& path);
void write_trace_csv(const std::vector<StepRecord>& trace,
                     const std::string& path);

struct CompareRow {
  std::string policy;
  double mean_served = 0.0;
  double ratio_vs_first = 1.0;
};

void write_compare_csv(const std::vector<CompareRow>& rows,
                       const std::string& path);

}  // namespace gfnoma
