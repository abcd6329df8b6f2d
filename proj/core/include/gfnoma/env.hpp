#pragma once

#include <deque>
#include <vector>

#include "gfnoma/access.hpp"
#include "gfnoma/config.hpp"
#include "gfnoma/phy.hpp"
#include "gfnoma/sic.hpp"
#include "gfnoma/traffic.hpp"

namespace gfnoma {

enum class UeStatus { Dormant, Backlogged, Served, Dropped };

struct UeRecord {
  int ue_id = 0;
  UePhy phy;
  double activation_tti = 0.0;
  int harq_index = 0;    // RTTs entered so far
  int latency_ttis = 0;  // sum of entered-RTT durations
  UeStatus status = UeStatus::Dormant;
};

// The BS-visible measurement vector for one RTT plus the action taken.
struct RttObservation {
  int v_cc = 0;  // collision CTUs
  int v_ic = 0;  // idle CTUs
  int v_sc = 0;  // singleton CTUs
  int v_sd = 0;  // singletons decoded (served this RTT)
  int v_ud = 0;  // singletons detected but not decoded
  int action_k = 0;
  int action_c = 0;
  long tti_clock = 0;  // at the end of the RTT
};

struct Action {
  int k = 0;
  int c = 0;
};

// One row of the per-step trace; tti_clock is the RTT's start.
struct StepRecord {
  long tti_clock = 0;
  int k = 0;
  int c = 0;
  int v_cc = 0;
  int v_ic = 0;
  int v_sc = 0;
  int v_sd = 0;
  int v_ud = 0;
  double reward = 0.0;
  int backlog_size = 0;   // backlogged UEs left after the RTT
  long dropped_cum = 0;
  int n_transmitting = 0;  // not part of the trace CSV schema
};

enum class ObsMode { SingleAgent, MultiAgent };

enum class AdmitDecision { Transmit, Drop };

// Prospective-latency check at the head of an RTT. On Transmit the
// record's latency and HARQ index are charged for the whole round
// before it runs; on Drop the packet is discarded untransmitted.
AdmitDecision latency_admit(UeRecord& ue, int k, const SimConfig& cfg);

// RTT-stepped grant-free access environment. One instance is strictly
// single-threaded; run one instance per worker for parallel rollouts.
class GfNomaEnv {
 public:
  explicit GfNomaEnv(const SimConfig& cfg);

  // Fresh placement, schedule and backlog. The returned observation is
  // all zeros (every CTU idle) with a uniformly random action recorded.
  RttObservation reset(int episode);

  struct StepOut {
    RttObservation obs;
    double reward = 0.0;
    bool done = false;
  };

  StepOut step(Action a);

  // SingleAgent: the previous observation's five counts, each divided
  // by max(c_set). MultiAgent: the last m_obs (action, observation)
  // pairs, newest first, 7 values per slot, zero-padded while the
  // history is shorter than m_obs.
  std::vector<double> observation_vector(ObsMode mode) const;

  const SimConfig& config() const { return cfg_; }
  const RttObservation& last_observation() const { return history_.back(); }
  const std::deque<RttObservation>& history() const { return history_; }
  const std::vector<StepRecord>& trace() const { return trace_; }
  const std::vector<UeRecord>& ues() const { return ues_; }
  const ActivationSchedule& schedule() const { return schedule_; }

  bool done() const { return done_; }
  long tti_clock() const { return tti_clock_; }
  long horizon_ttis() const { return horizon_ttis_; }
  int steps_taken() const { return step_index_; }
  int backlog_size() const { return static_cast<int>(backlog_.size()); }
  long served_total() const { return served_total_; }
  long dropped_total() const { return dropped_total_; }
  int activated_total() const { return cfg_.n_ues; }

  int k_index(int k) const;  // position in k_set, -1 if absent
  int c_index(int c) const;

 private:
  SimConfig cfg_;
  int latency_budget_;
  long horizon_ttis_;

  int episode_ = 0;
  std::vector<UeRecord> ues_;
  ActivationSchedule schedule_;
  std::vector<int> backlog_;  // ue ids, ascending
  int next_arrival_ = 0;
  long tti_clock_ = 0;
  int step_index_ = 0;
  bool done_ = false;
  long served_total_ = 0;
  long dropped_total_ = 0;
  std::deque<RttObservation> history_;
  std::vector<StepRecord> trace_;
};

}  // namespace gfnoma
