#include <doctest.h>

#include <cmath>
#include <set>

#include "gfnoma/env.hpp"
#include "gfnoma/policy.hpp"

using namespace gfnoma;

namespace {

SimConfig small_cfg(int n_ues = 300, double total_s = 0.1) {
  SimConfig cfg;
  cfg.n_ues = n_ues;
  cfg.traffic_total_s = total_s;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("reset is deterministic per (seed, episode)") {
  const SimConfig cfg = small_cfg();
  GfNomaEnv a(cfg), b(cfg);
  const RttObservation oa = a.reset(3);
  const RttObservation ob = b.reset(3);
  CHECK(oa.action_k == ob.action_k);
  CHECK(oa.action_c == ob.action_c);
  CHECK(a.schedule().times == b.schedule().times);
  for (int i = 0; i < cfg.n_ues; ++i)
    CHECK(a.ues()[i].phy.distance_m == b.ues()[i].phy.distance_m);

  const RttObservation oc = b.reset(4);
  bool same_placement = true;
  for (int i = 0; i < cfg.n_ues; ++i)
    same_placement &= a.ues()[i].phy.distance_m == b.ues()[i].phy.distance_m;
  CHECK(!same_placement);

  // Reset observation: all zero counts except a fully idle pool.
  CHECK(oa.v_cc == 0);
  CHECK(oa.v_sc == 0);
  CHECK(oa.v_sd == 0);
  CHECK(oa.v_ud == 0);
  CHECK(oa.v_ic == oa.action_c);
  CHECK(oc.tti_clock == 0);
}

TEST_CASE("latency admission charges the round up front") {
  SimConfig cfg = small_cfg();
  cfg.latency_constraint_ms = 2.0;  // 16 TTIs
  UeRecord ue;
  ue.status = UeStatus::Backlogged;

  SUBCASE("fresh UE admits the longest round") {
    CHECK(latency_admit(ue, 8, cfg) == AdmitDecision::Transmit);
    CHECK(ue.latency_ttis == 11);
    CHECK(ue.harq_index == 1);
  }
  SUBCASE("remaining budget is checked per repetition value") {
    ue.latency_ttis = 11;
    UeRecord u1 = ue;
    CHECK(latency_admit(u1, 1, cfg) == AdmitDecision::Transmit);  // 15 <= 16
    CHECK(u1.latency_ttis == 15);
    UeRecord u2 = ue;
    CHECK(latency_admit(u2, 2, cfg) == AdmitDecision::Transmit);  // 16 <= 16
    CHECK(u2.latency_ttis == 16);
    UeRecord u4 = ue;
    CHECK(latency_admit(u4, 4, cfg) == AdmitDecision::Drop);  // 18 > 16
    CHECK(u4.status == UeStatus::Dropped);
    CHECK(u4.latency_ttis == 11);  // dropped packets are not charged
  }
}

TEST_CASE("stepping with no traffic yields an idle observation") {
  SimConfig cfg = small_cfg(0);
  GfNomaEnv env(cfg);
  env.reset(0);
  const auto out = env.step({4, 24});
  CHECK(out.obs.v_cc == 0);
  CHECK(out.obs.v_ic == 24);
  CHECK(out.obs.v_sc == 0);
  CHECK(out.obs.v_sd == 0);
  CHECK(out.obs.v_ud == 0);
  CHECK(out.reward == 0.0);
  CHECK(env.tti_clock() == 7);
}

TEST_CASE("one close-in UE is served in its first round") {
  SimConfig cfg = small_cfg(1, 0.01);
  cfg.cell_radius_m = 50.0;  // high SNR placement anywhere
  GfNomaEnv env(cfg);
  env.reset(0);
  double reward = 0.0;
  while (!env.done()) reward += env.step({1, 12}).reward;
  CHECK(reward == 1.0);
  CHECK(env.served_total() == 1);
  CHECK(env.dropped_total() == 0);
  CHECK(env.ues()[0].status == UeStatus::Served);
  CHECK(env.ues()[0].latency_ttis <= latency_budget_ttis(cfg));
}

TEST_CASE("invalid actions and stepping past done throw") {
  SimConfig cfg = small_cfg(5, 0.01);
  GfNomaEnv env(cfg);
  env.reset(0);
  CHECK_THROWS_AS(env.step({3, 12}), std::invalid_argument);
  CHECK_THROWS_AS(env.step({1, 13}), std::invalid_argument);
  while (!env.done()) env.step({1, 12});
  CHECK_THROWS_AS(env.step({1, 12}), std::logic_error);
}

TEST_CASE("episode-wide accounting identities hold under a random policy") {
  SimConfig cfg = small_cfg(400, 0.1);
  cfg.latency_constraint_ms = 2.0;
  GfNomaEnv env(cfg);
  RandomPolicy policy(cfg.seed);

  for (int episode = 0; episode < 3; ++episode) {
    policy.begin_episode(episode);
    env.reset(episode);
    long expected_clock = 0;
    double reward_sum = 0.0;
    while (!env.done()) {
      const Action a = policy.act(env);
      const auto out = env.step(a);
      expected_clock += rtt_duration_ttis(a.k);
      reward_sum += out.reward;
      CHECK(out.obs.v_sd + out.obs.v_ud == out.obs.v_sc);
      CHECK(out.obs.v_cc + out.obs.v_ic + out.obs.v_sc == a.c);
      CHECK(env.tti_clock() == expected_clock);
    }
    // Conservation: every activated UE ends served or dropped.
    CHECK(env.served_total() + env.dropped_total() == cfg.n_ues);
    CHECK(reward_sum == doctest::Approx(env.served_total()));
    int served = 0, dropped = 0;
    for (const auto& ue : env.ues()) {
      CHECK((ue.status == UeStatus::Served || ue.status == UeStatus::Dropped));
      if (ue.status == UeStatus::Served) {
        ++served;
        CHECK(ue.latency_ttis <= latency_budget_ttis(cfg));
      } else {
        ++dropped;
      }
    }
    CHECK(served == env.served_total());
    CHECK(dropped == env.dropped_total());
  }
}

TEST_CASE("a 2 ms budget never admits a second K=8 round") {
  SimConfig cfg = small_cfg(500, 0.05);
  cfg.latency_constraint_ms = 2.0;
  GfNomaEnv env(cfg);
  env.reset(0);
  while (!env.done()) env.step({8, 48});
  for (const auto& ue : env.ues()) CHECK(ue.harq_index <= 1);
  CHECK(env.served_total() + env.dropped_total() == cfg.n_ues);
}

TEST_CASE("observation vectors follow the documented layouts") {
  SimConfig cfg = small_cfg(50, 0.05);
  GfNomaEnv env(cfg);
  env.reset(0);

  // Single-agent: previous counts over max(c_set); fresh reset shows a
  // fully idle pool under the recorded random action.
  const auto s0 = env.observation_vector(ObsMode::SingleAgent);
  REQUIRE(s0.size() == 5);
  CHECK(s0[0] == 0.0);
  CHECK(s0[1] ==
        doctest::Approx(static_cast<double>(env.last_observation().action_c) /
                        cfg.max_c()));
  CHECK(s0[2] == 0.0);

  const auto m0 = env.observation_vector(ObsMode::MultiAgent);
  REQUIRE(m0.size() == 35);  // 5 slots x (2 actions + 5 counts)
  for (size_t i = 7; i < m0.size(); ++i) CHECK(m0[i] == 0.0);

  // After two steps the newest slot is first.
  env.step({2, 24});
  const auto out = env.step({4, 36});
  const auto m2 = env.observation_vector(ObsMode::MultiAgent);
  CHECK(m2[0] == doctest::Approx((env.k_index(4) + 1) / 5.0));
  CHECK(m2[1] == doctest::Approx((env.c_index(36) + 1) / 4.0));
  CHECK(m2[2] == doctest::Approx(out.obs.v_cc / 48.0));
  CHECK(m2[7] == doctest::Approx((env.k_index(2) + 1) / 5.0));
  CHECK(m2[8] == doctest::Approx((env.c_index(24) + 1) / 4.0));
  CHECK(env.history().size() <= static_cast<size_t>(cfg.learn.m_obs));
}

TEST_CASE("admission matches the window query") {
  SimConfig cfg = small_cfg(200, 0.05);
  GfNomaEnv env(cfg);
  env.reset(0);
  long prev_clock = 0;
  std::set<int> admitted;
  while (!env.done()) {
    const auto ids = arrivals_in_window(env.schedule(), prev_clock - 0.5,
                                        static_cast<double>(env.tti_clock()),
                                        cfg);
    // Hmm: between steps the window is (prev, current]; collect across
    // the run and compare at the end.
    for (int id : ids) admitted.insert(id);
    prev_clock = env.tti_clock();
    env.step({1, 12});
  }
  const auto tail = arrivals_in_window(
      env.schedule(), prev_clock - 0.5,
      static_cast<double>(env.tti_clock()), cfg);
  for (int id : tail) admitted.insert(id);
  CHECK(admitted.size() == static_cast<size_t>(cfg.n_ues));
}
