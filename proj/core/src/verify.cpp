#include "gfnoma/verify.hpp"

#include <cmath>
#include <sstream>

#include "gfnoma/access.hpp"
#include "gfnoma/baselines.hpp"
#include "gfnoma/oracle.hpp"
#include "gfnoma/traffic.hpp"

namespace gfnoma {

namespace {

bool report_equals_counts(const CollisionReport& r, const OccupancyCounts& o) {
  if (r.v_ic != o.v_ic || r.v_sc != o.v_sc || r.v_cc != o.v_cc) return false;
  for (const auto& [ctu, ue] : r.singleton) {
    auto it = o.occupants.find(ctu);
    if (it == o.occupants.end() || it->second.size() != 1 ||
        it->second.front() != ue)
      return false;
  }
  for (const auto& [ctu, ues] : r.collision) {
    auto it = o.occupants.find(ctu);
    if (it == o.occupants.end() || it->second != ues) return false;
  }
  for (int ctu : r.idle)
    if (o.occupants.count(ctu)) return false;
  return true;
}

SuiteResult collision_suite(int max_n, int max_c, int random_cases) {
  SuiteResult s{"collision-bruteforce", 0, true, ""};
  // Exhaustive: every assignment of n UEs to c CTUs.
  for (int c = 1; c <= max_c && s.pass; ++c) {
    const CtuPool pool{c, 1, c};
    for (int n = 0; n <= max_n && s.pass; ++n) {
      std::vector<int> odo(n, 1);
      while (true) {
        CtuAssignment a;
        for (int u = 0; u < n; ++u) {
          a.choice.emplace_back(u, odo[u]);
          a.by_ctu[odo[u]].push_back(u);
        }
        const CollisionReport rep = classify(a, pool);
        const OccupancyCounts ora = brute_force_occupancy(a.choice, c);
        ++s.cases;
        if (!report_equals_counts(rep, ora) || rep.v_ic + rep.v_sc + rep.v_cc != c) {
          s.pass = false;
          break;
        }
        int pos = n - 1;
        while (pos >= 0 && odo[pos] == c) odo[pos--] = 1;
        if (pos < 0) break;
        ++odo[pos];
      }
    }
  }
  // Random spot checks at production-sized pools.
  RngStream rng(20240, Stream::Harness, 1);
  for (int it = 0; it < random_cases && s.pass; ++it) {
    const int c = 12 * (1 + rng.next_int(4));
    const int n = rng.next_int(3 * c);
    std::vector<int> active(n);
    for (int u = 0; u < n; ++u) active[u] = u;
    const CtuPool pool = build_pool(c, 4);
    const CtuAssignment a = select_ctus(active, pool, rng);
    const CollisionReport rep = classify(a, pool);
    const OccupancyCounts ora = brute_force_occupancy(a.choice, c);
    ++s.cases;
    s.pass = report_equals_counts(rep, ora);
  }
  return s;
}

SuiteResult sic_suite(int cases, int max_singletons, int max_collisions,
                      int max_k) {
  SuiteResult s{"sic-step-oracle", 0, true, ""};
  SimConfig cfg;
  RngStream rng(771, Stream::Harness, 2);
  for (int it = 0; it < cases; ++it) {
    RbRound round;
    round.rb = 1;
    round.k_max = 1 + rng.next_int(max_k);
    const int ns = rng.next_int(max_singletons + 1);
    const int nc = rng.next_int(max_collisions + 1);
    int ue = 0;
    for (int i = 0; i < ns; ++i, ++ue) {
      const double r = 1.0 + rng.next_unit() * (cfg.cell_radius_m - 1.0);
      round.singleton_ues.push_back(
          {ue, r, std::pow(r, -cfg.pathloss_exp)});
    }
    for (int i = 0; i < nc; ++i, ++ue) {
      const double r = 1.0 + rng.next_unit() * (cfg.cell_radius_m - 1.0);
      round.collision_ues.push_back(
          {ue, r, std::pow(r, -cfg.pathloss_exp)});
    }
    const std::uint64_t draw_seed = rng.next_u64();
    FadingFn fading = [draw_seed](int ue_id, int k) {
      return counter_exp1(draw_seed, Stream::Fading, 0, 0, ue_id, k);
    };
    const bool ok_k = decode_results_equal(
        decode_k_repetition(round, cfg, fading),
        sic_oracle_k_repetition(round, cfg, fading));
    const bool ok_p = decode_results_equal(
        decode_proactive(round, cfg, fading),
        sic_oracle_proactive(round, cfg, fading));
    s.cases += 2;
    if (!ok_k || !ok_p) {
      s.pass = false;
      break;
    }
  }
  return s;
}

SuiteResult gradient_suite(int batches) {
  SuiteResult s{"gradient-fd", 0, true, ""};
  const std::vector<int> dims{7, 16, 16, 5};
  RngStream init(99, Stream::NetInit, 0);
  RngStream init_t(99, Stream::NetInit, 1);
  const ValueNet online = net_init(dims, init);
  const ValueNet target = net_init(dims, init_t);
  RngStream rng(99, Stream::Harness, 3);
  double worst = 0.0;
  long skipped = 0;
  for (int b = 0; b < batches; ++b) {
    Minibatch mb;
    const int B = 32;
    mb.s.resize(7, B);
    mb.s2.resize(7, B);
    mb.a.resize(B);
    mb.r.resize(B);
    mb.terminal.resize(B);
    for (int i = 0; i < B; ++i) {
      for (int j = 0; j < 7; ++j) {
        mb.s(j, i) = 2.0 * rng.next_unit() - 1.0;
        mb.s2(j, i) = 2.0 * rng.next_unit() - 1.0;
      }
      mb.a(i) = rng.next_int(5);
      mb.r(i) = 2.0 * rng.next_unit() - 1.0;
      mb.terminal[i] = rng.next_unit() < 0.1 ? 1 : 0;
    }
    const FdCheckResult fd =
        fd_check_td_gradient(online, target, mb, 0.5, true);
    worst = std::max(worst, fd.max_rel_err);
    skipped += fd.skipped;
    s.cases += fd.probes;
  }
  std::ostringstream detail;
  detail << "max_rel_err=" << worst << " skipped=" << skipped;
  s.detail = detail.str();
  s.pass = worst <= 1e-4 && skipped <= s.cases / 1000;
  return s;
}

SuiteResult le_suite() {
  SuiteResult s{"le-closed-forms", 0, true, ""};
  auto expect = [&](bool cond) {
    ++s.cases;
    if (!cond) s.pass = false;
  };
  expect(std::abs(le_expected_idle(4, 4.0) - 4.0 * std::pow(0.75, 4)) < 1e-12);
  expect(std::abs(le_expected_idle(10, 0.0) - 10.0) < 1e-12);
  expect(std::abs(le_expected_success(4, 4.0) - 4.0 * std::pow(0.75, 3)) <
         1e-12);
  expect(std::abs(le_expected_success(7, 1.0) - 1.0) < 1e-12);
  expect(std::abs(le_invert(le_expected_idle(4, 4.0), 4) - 4.0) < 1e-9);
  // Inversion identity across the configured pools.
  for (int c : {12, 24, 36, 48}) {
    for (double n = 1.0; n <= 2.0 * c; n += 1.0) {
      const double err = std::abs(le_invert(le_expected_idle(c, n), c) - n);
      expect(err < 0.1);
    }
    expect(std::isfinite(le_invert(0.0, c)));  // singularity guard
    expect(std::isfinite(le_invert(static_cast<double>(c), c)));
  }
  // Eq-14 degeneracy: monotone in c for n >= 2 on the grid.
  const std::vector<int> pools{12, 24, 36, 48};
  for (double n = 2.0; n <= 64.0; n += 1.0) {
    expect(le_choose_c(n, pools) == 48);
    for (size_t i = 1; i < pools.size(); ++i)
      expect(le_expected_success(pools[i], n) >
             le_expected_success(pools[i - 1], n));
  }
  return s;
}

SuiteResult traffic_suite() {
  SuiteResult s{"traffic-normalization", 0, true, ""};
  for (auto [a, b] : std::vector<std::pair<double, double>>{
           {2.0, 4.0}, {1.0, 1.0}, {5.0, 2.0}, {2.0, 2.0}}) {
    SimConfig cfg;
    cfg.beta_alpha = a;
    cfg.beta_beta = b;
    cfg.traffic_total_s = 2.0;
    const double integral = simpson(
        [&](double tau) { return beta_pdf(tau, cfg); }, 0.0,
        cfg.traffic_total_s, 4096);
    ++s.cases;
    if (std::abs(integral - 1.0) > 1e-6) s.pass = false;
  }
  return s;
}

}  // namespace

std::vector<SuiteResult> run_verification() {
  std::vector<SuiteResult> out;
  out.push_back(collision_suite(6, 5, 2000));
  out.push_back(sic_suite(2000, 4, 2, 8));
  out.push_back(gradient_suite(10));
  out.push_back(le_suite());
  out.push_back(traffic_suite());
  return out;
}

}  // namespace gfnoma
