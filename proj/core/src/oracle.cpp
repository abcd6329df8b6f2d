#include "gfnoma/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace gfnoma {

OccupancyCounts brute_force_occupancy(
    const std::vector<std::pair<int, int>>& choices, int c_total) {
  std::vector<int> count(c_total + 1, 0);
  OccupancyCounts out;
  for (const auto& [ue, ctu] : choices) {
    count[ctu] += 1;
    out.occupants[ctu].push_back(ue);
  }
  for (int ctu = 1; ctu <= c_total; ++ctu) {
    if (count[ctu] == 0) ++out.v_ic;
    else if (count[ctu] == 1) ++out.v_sc;
    else ++out.v_cc;
  }
  return out;
}

namespace {

struct OracleUe {
  int ue;
  double power;
};

// Received powers for one repetition, recomputed from first principles.
std::vector<OracleUe> powers_at(const std::vector<RbUe>& ues, int k,
                                const SimConfig& cfg, const FadingFn& fading) {
  std::vector<OracleUe> out;
  out.reserve(ues.size());
  for (const RbUe& u : ues) {
    const double p = dbm_to_watt(cfg.tx_power_dbm) * fading(u.ue_id, k) *
                     std::pow(u.distance_m, -cfg.pathloss_exp);
    out.push_back({u.ue_id, p});
  }
  return out;
}

// One repetition of the step list: sort, then decode stage by stage,
// the interference being every weaker singleton still undecoded this
// repetition plus every collision signal, until a stage fails.
void oracle_pass(const std::vector<RbUe>& singles,
                 const std::vector<RbUe>& colls, int k, const SimConfig& cfg,
                 const FadingFn& fading, std::map<int, int>& decoded_at) {
  std::vector<OracleUe> s_pow = powers_at(singles, k, cfg, fading);
  const std::vector<OracleUe> c_pow = powers_at(colls, k, cfg, fading);
  std::sort(s_pow.begin(), s_pow.end(), [](const OracleUe& a,
                                           const OracleUe& b) {
    return a.power != b.power ? a.power > b.power : a.ue < b.ue;
  });
  const double gamma = std::pow(10.0, cfg.sinr_threshold_db / 10.0);
  for (size_t s = 0; s < s_pow.size(); ++s) {
    double interference = 0.0;
    for (size_t m = s + 1; m < s_pow.size(); ++m)
      interference += s_pow[m].power;
    for (const OracleUe& u : c_pow) interference += u.power;
    const double snr =
        s_pow[s].power / (interference + dbm_to_watt(cfg.noise_dbm));
    if (snr >= gamma) {
      decoded_at.try_emplace(s_pow[s].ue, k);
    } else {
      break;
    }
  }
}

DecodeResult collect(const RbRound& round, std::map<int, int> decoded_at) {
  DecodeResult r;
  r.decoded_at = std::move(decoded_at);
  for (const auto& [ue, k] : r.decoded_at) r.decoded.push_back(ue);
  for (const RbUe& u : round.singleton_ues)
    if (!r.decoded_at.count(u.ue_id)) r.failed.push_back(u.ue_id);
  std::sort(r.decoded.begin(), r.decoded.end());
  std::sort(r.failed.begin(), r.failed.end());
  return r;
}

}  // namespace

DecodeResult sic_oracle_k_repetition(const RbRound& round,
                                     const SimConfig& cfg,
                                     const FadingFn& fading) {
  std::map<int, int> decoded_at;
  for (int k = 1; k <= round.k_max; ++k)
    oracle_pass(round.singleton_ues, round.collision_ues, k, cfg, fading,
                decoded_at);
  return collect(round, std::move(decoded_at));
}

DecodeResult sic_oracle_proactive(const RbRound& round, const SimConfig& cfg,
                                  const FadingFn& fading) {
  std::map<int, int> decoded_at;
  std::vector<RbUe> singles = round.singleton_ues;
  std::vector<RbUe> colls = round.collision_ues;
  for (int k = 1; k <= round.k_max; ++k) {
    if (k >= 4) {
      std::vector<RbUe> keep;
      for (const RbUe& u : singles) {
        auto it = decoded_at.find(u.ue_id);
        if (it == decoded_at.end() || it->second > k - 4) keep.push_back(u);
      }
      singles = std::move(keep);
      colls.clear();
    }
    oracle_pass(singles, colls, k, cfg, fading, decoded_at);
  }
  return collect(round, std::move(decoded_at));
}

bool decode_results_equal(const DecodeResult& a, const DecodeResult& b) {
  return a.decoded == b.decoded && a.failed == b.failed &&
         a.decoded_at == b.decoded_at;
}

namespace {

// Plain-loop forward pass that also reports the ReLU firing pattern.
double oracle_loss(const ValueNet& net, const Minibatch& batch,
                   const std::vector<double>& y,
                   std::vector<std::uint8_t>* mask) {
  const int B = batch.size();
  if (mask) mask->clear();
  double loss = 0.0;
  for (int i = 0; i < B; ++i) {
    std::vector<double> a(net.input_dim());
    for (int j = 0; j < net.input_dim(); ++j) a[j] = batch.s(j, i);
    for (size_t l = 0; l < net.w.size(); ++l) {
      const int out_dim = net.dims[l + 1];
      std::vector<double> z(out_dim, 0.0);
      for (int r = 0; r < out_dim; ++r) {
        double acc = net.b[l](r);
        for (size_t c = 0; c < a.size(); ++c) acc += net.w[l](r, c) * a[c];
        z[r] = acc;
      }
      if (l + 1 < net.w.size()) {
        for (int r = 0; r < out_dim; ++r) {
          if (mask) mask->push_back(z[r] > 0.0 ? 1 : 0);
          if (z[r] < 0.0) z[r] = 0.0;
        }
      }
      a = std::move(z);
    }
    const double err = a[batch.a(i)] - y[i];
    loss += 0.5 * err * err;
  }
  return loss / B;
}

}  // namespace

FdCheckResult fd_check_td_gradient(const ValueNet& online,
                                   const ValueNet& target,
                                   const Minibatch& batch, double gamma,
                                   bool ddqn, double h) {
  const int B = batch.size();

  // Frozen targets.
  const Eigen::MatrixXd qt2 = forward_batch(target, batch.s2);
  Eigen::MatrixXd qo2;
  if (ddqn) qo2 = forward_batch(online, batch.s2);
  std::vector<double> y(B);
  for (int i = 0; i < B; ++i) {
    y[i] = batch.r(i);
    if (!batch.terminal[i]) {
      const int a_star = argmax_q(ddqn ? qo2.col(i) : qt2.col(i));
      y[i] += gamma * qt2(a_star, i);
    }
  }

  const NetGrad analytic = td_gradient(online, target, batch, gamma, ddqn);

  FdCheckResult result;
  ValueNet probe = online;
  auto check_param = [&](double& theta, double analytic_g) {
    double step = h;
    for (int attempt = 0; attempt < 4; ++attempt) {
      const double saved = theta;
      std::vector<std::uint8_t> mask_p, mask_m;
      theta = saved + step;
      const double lp = oracle_loss(probe, batch, y, &mask_p);
      theta = saved - step;
      const double lm = oracle_loss(probe, batch, y, &mask_m);
      theta = saved;
      if (mask_p == mask_m) {
        const double fd = (lp - lm) / (2.0 * step);
        const double denom =
            std::max({1e-8, std::abs(fd), std::abs(analytic_g)});
        result.max_rel_err =
            std::max(result.max_rel_err, std::abs(fd - analytic_g) / denom);
        ++result.probes;
        return;
      }
      step /= 10.0;
      ++result.reprobed;
    }
    ++result.skipped;
  };

  for (size_t l = 0; l < probe.w.size(); ++l) {
    for (int i = 0; i < probe.w[l].rows(); ++i)
      for (int j = 0; j < probe.w[l].cols(); ++j)
        check_param(probe.w[l](i, j), analytic.w[l](i, j));
    for (int i = 0; i < probe.b[l].size(); ++i)
      check_param(probe.b[l](i), analytic.b[l](i));
  }
  return result;
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
  const int n = intervals % 2 == 0 ? intervals : intervals + 1;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace gfnoma
