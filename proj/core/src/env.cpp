#include "gfnoma/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace gfnoma {

AdmitDecision latency_admit(UeRecord& ue, int k, const SimConfig& cfg) {
  const int prospective = ue.latency_ttis + rtt_duration_ttis(k);
  if (prospective > latency_budget_ttis(cfg)) {
    ue.status = UeStatus::Dropped;
    return AdmitDecision::Drop;
  }
  ue.latency_ttis = prospective;
  ue.harq_index += 1;
  return AdmitDecision::Transmit;
}

GfNomaEnv::GfNomaEnv(const SimConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  latency_budget_ = latency_budget_ttis(cfg_);
  horizon_ttis_ = cfg_.horizon_ttis();
}

int GfNomaEnv::k_index(int k) const {
  auto it = std::find(cfg_.k_set.begin(), cfg_.k_set.end(), k);
  return it == cfg_.k_set.end() ? -1
                                : static_cast<int>(it - cfg_.k_set.begin());
}

int GfNomaEnv::c_index(int c) const {
  auto it = std::find(cfg_.c_set.begin(), cfg_.c_set.end(), c);
  return it == cfg_.c_set.end() ? -1
                                : static_cast<int>(it - cfg_.c_set.begin());
}

RttObservation GfNomaEnv::reset(int episode) {
  episode_ = episode;
  RngStream placement(cfg_.seed, Stream::Placement, episode);
  RngStream activation(cfg_.seed, Stream::Activation, episode);

  auto phys = place_ues(cfg_, placement);
  schedule_ = sample_activations(cfg_, activation);
  const double tti_s = cfg_.tti_ms * 1e-3;
  ues_.clear();
  ues_.reserve(cfg_.n_ues);
  for (int i = 0; i < cfg_.n_ues; ++i) {
    UeRecord rec;
    rec.ue_id = i;
    rec.phy = phys[i];
    rec.phy.ue_id = i;
    rec.activation_tti = schedule_.times[i] / tti_s;
    ues_.push_back(rec);
  }

  backlog_.clear();
  next_arrival_ = 0;
  tti_clock_ = 0;
  step_index_ = 0;
  done_ = false;
  served_total_ = 0;
  dropped_total_ = 0;
  history_.clear();
  trace_.clear();

  RngStream reset_action(cfg_.seed, Stream::ResetAction, episode);
  RttObservation obs;
  obs.action_k = cfg_.k_set[reset_action.next_int(
      static_cast<int>(cfg_.k_set.size()))];
  obs.action_c = cfg_.c_set[reset_action.next_int(
      static_cast<int>(cfg_.c_set.size()))];
  obs.v_ic = obs.action_c;  // no traffic yet: the whole pool is idle
  obs.tti_clock = 0;
  history_.push_back(obs);
  return obs;
}

GfNomaEnv::StepOut GfNomaEnv::step(Action a) {
  if (done_) throw std::logic_error("GfNomaEnv::step: episode is done");
  if (k_index(a.k) < 0)
    throw std::invalid_argument("GfNomaEnv::step: k=" + std::to_string(a.k) +
                                " not in k_set");
  if (c_index(a.c) < 0)
    throw std::invalid_argument("GfNomaEnv::step: c=" + std::to_string(a.c) +
                                " not in c_set");

  const long rtt_start = tti_clock_;
  const int rtt = rtt_duration_ttis(a.k);

  // 1. UEs activated up to this RTT boundary join the backlog.
  const double tti_s_clock = static_cast<double>(tti_clock_);
  while (next_arrival_ < cfg_.n_ues &&
         ues_[next_arrival_].activation_tti <= tti_s_clock) {
    ues_[next_arrival_].status = UeStatus::Backlogged;
    backlog_.push_back(next_arrival_);
    ++next_arrival_;
  }

  // 2. Latency check; survivors transmit this RTT.
  std::vector<int> transmitting;
  transmitting.reserve(backlog_.size());
  for (int id : backlog_) {
    if (latency_admit(ues_[id], a.k, cfg_) == AdmitDecision::Transmit) {
      transmitting.push_back(id);
    } else {
      ++dropped_total_;
    }
  }

  // 3. Random CTU choice and collision detection.
  const CtuPool pool = build_pool(a.c, cfg_.n_rbs);
  RngStream ctu_rng(cfg_.seed, Stream::CtuChoice, episode_, step_index_);
  const CtuAssignment assignment = select_ctus(transmitting, pool, ctu_rng);
  const CollisionReport report = classify(assignment, pool);

  // 4. Per-RB SIC decoding with counter-indexed fading.
  const std::uint64_t seed = cfg_.seed;
  const std::uint64_t ep = episode_;
  const std::uint64_t rtt_idx = step_index_;
  FadingFn fading = [seed, ep, rtt_idx](int ue, int k) {
    return counter_exp1(seed, Stream::Fading, ep, rtt_idx, ue, k);
  };

  std::vector<RbRound> rounds(cfg_.n_rbs);
  for (int f = 1; f <= cfg_.n_rbs; ++f) rounds[f - 1].rb = f;
  for (const auto& [ctu, ue] : report.singleton) {
    const UePhy& p = ues_[ue].phy;
    rounds[pool.rb_of(ctu) - 1].singleton_ues.push_back(
        {ue, p.distance_m, p.pathgain});
  }
  for (const auto& [ctu, ue_list] : report.collision) {
    for (int ue : ue_list) {
      const UePhy& p = ues_[ue].phy;
      rounds[pool.rb_of(ctu) - 1].collision_ues.push_back(
          {ue, p.distance_m, p.pathgain});
    }
  }

  int v_sd = 0;
  std::vector<int> served_ids;
  for (auto& round : rounds) {
    round.k_max = a.k;
    if (round.singleton_ues.empty()) continue;
    DecodeResult res = decode_round(round, cfg_, fading);
    v_sd += static_cast<int>(res.decoded.size());
    for (int ue : res.decoded) served_ids.push_back(ue);
  }

  // 5. HARQ bookkeeping: decoded singletons leave; everyone else who
  // transmitted stays backlogged and will redraw a CTU next RTT.
  for (int ue : served_ids) ues_[ue].status = UeStatus::Served;
  served_total_ += v_sd;
  std::vector<int> next_backlog;
  next_backlog.reserve(transmitting.size());
  for (int id : transmitting)
    if (ues_[id].status == UeStatus::Backlogged) next_backlog.push_back(id);
  backlog_ = std::move(next_backlog);

  // 6. Advance the clock and emit the observation.
  tti_clock_ += rtt;
  ++step_index_;

  RttObservation obs;
  obs.v_cc = report.v_cc;
  obs.v_ic = report.v_ic;
  obs.v_sc = report.v_sc;
  obs.v_sd = v_sd;
  obs.v_ud = report.v_sc - v_sd;
  obs.action_k = a.k;
  obs.action_c = a.c;
  obs.tti_clock = tti_clock_;
  history_.push_back(obs);
  while (static_cast<int>(history_.size()) > cfg_.learn.m_obs)
    history_.pop_front();

  StepRecord rec;
  rec.tti_clock = rtt_start;
  rec.k = a.k;
  rec.c = a.c;
  rec.v_cc = obs.v_cc;
  rec.v_ic = obs.v_ic;
  rec.v_sc = obs.v_sc;
  rec.v_sd = obs.v_sd;
  rec.v_ud = obs.v_ud;
  rec.reward = v_sd;
  rec.backlog_size = backlog_size();
  rec.dropped_cum = dropped_total_;
  rec.n_transmitting = static_cast<int>(transmitting.size());
  trace_.push_back(rec);

  // 7. Done once the traffic horizon has passed and every UE has been
  // resolved; hard cap at twice the horizon.
  done_ = (tti_clock_ >= horizon_ttis_ && next_arrival_ == cfg_.n_ues &&
           backlog_.empty()) ||
          tti_clock_ >= 2 * horizon_ttis_;

  return {obs, static_cast<double>(v_sd), done_};
}

std::vector<double> GfNomaEnv::observation_vector(ObsMode mode) const {
  const double c_max = static_cast<double>(cfg_.max_c());
  if (mode == ObsMode::SingleAgent) {
    const RttObservation& o = history_.back();
    return {o.v_cc / c_max, o.v_ic / c_max, o.v_sc / c_max, o.v_sd / c_max,
            o.v_ud / c_max};
  }
  const int m = cfg_.learn.m_obs;
  const double k_n = static_cast<double>(cfg_.k_set.size());
  const double c_n = static_cast<double>(cfg_.c_set.size());
  std::vector<double> out;
  out.reserve(7 * m);
  const int have = static_cast<int>(history_.size());
  for (int j = 0; j < m; ++j) {
    if (j < have) {
      const RttObservation& o = history_[have - 1 - j];
      out.push_back((k_index(o.action_k) + 1) / k_n);
      out.push_back((c_index(o.action_c) + 1) / c_n);
      out.push_back(o.v_cc / c_max);
      out.push_back(o.v_ic / c_max);
      out.push_back(o.v_sc / c_max);
      out.push_back(o.v_sd / c_max);
      out.push_back(o.v_ud / c_max);
    } else {
      for (int z = 0; z < 7; ++z) out.push_back(0.0);
    }
  }
  return out;
}

}  // namespace gfnoma
