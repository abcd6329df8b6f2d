#include "gfnoma/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gfnoma {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

void write_curve_csv(const std::vector<EpisodeRow>& curve,
                     const std::string& path) {
  auto out = open_out(path);
  out << "episode,mean_reward,eps,loss_mean\n";
  for (const auto& r : curve)
    out << r.episode << "," << format_double(r.mean_reward) << ","
        << format_double(r.eps) << "," << format_double(r.loss_mean) << "\n";
}

void write_episodes_csv(const std::vector<EpisodeMetrics>& eps,
                        const std::string& path) {
  auto out = open_out(path);
  out << "episode,total_reward,served,dropped,activated,steps\n";
  for (const auto& e : eps)
    out << e.episode << "," << format_double(e.total_reward) << "," << e.served
        << "," << e.dropped << "," << e.activated << "," << e.steps << "\n";
}

void write_bucket_csv(const std::vector<BucketRow>& rows,
                      const std::string& path) {
  auto out = open_out(path);
  out << "tti_bucket,succ,non_coll,coll,dec_fail\n";
  for (const auto& r : rows)
    out << r.tti_bucket << "," << format_double(r.succ) << ","
        << format_double(r.non_coll) << "," << format_double(r.coll) << ","
        << format_double(r.dec_fail) << "\n";
}

void write_trace_csv(const std::vector<StepRecord>& trace,
                     const std::string& path) {
  auto out = open_out(path);
  out << "tti_clock,k,c,v_cc,v_ic,v_sc,v_sd,v_ud,reward,backlog_size,"
         "dropped_cum\n";
  for (const auto& s : trace)
    out << s.tti_clock << "," << s.k << "," << s.c << "," << s.v_cc << ","
        << s.v_ic << "," << s.v_sc << "," << s.v_sd << "," << s.v_ud << ","
        << format_double(s.reward) << "," << s.backlog_size << ","
        << s.dropped_cum << "\n";
}

void write_compare_csv(const std::vector<CompareRow>& rows,
                       const std::string& path) {
  auto out = open_out(path);
  out << "policy,mean_served,ratio_vs_first\n";
  for (const auto& r : rows)
    out << r.policy << "," << format_double(r.mean_served) << ","
        << format_double(r.ratio_vs_first) << "\n";
}

}  // namespace gfnoma
