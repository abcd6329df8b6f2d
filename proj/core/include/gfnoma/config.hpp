#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gfnoma {

enum class Scheme { KRepetition, Proactive };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

// Q-learning hyperparameters (defaults follow the standard DQN recipe
// used throughout: RMSProp 1e-4, gamma 0.5, eps floor 0.1, batch 32,
// replay 10000, target sync every 1000 gradient steps, 2x128 ReLU).
struct LearnConfig {
  double lr = 1e-4;
  double gamma = 0.5;
  double eps_min = 0.1;
  int minibatch = 32;
  int replay_capacity = 10000;
  int target_sync_every = 1000;
  std::vector<int> hidden_sizes{128, 128};
  int m_obs = 5;          // observation slots kept in the multi-agent state
  int episodes = 1000;
  double eps_decay_fraction = 0.8;
  bool ddqn = true;       // decoupled argmax; false = target-net argmax
};

// Full scenario description. All power/SINR values are stored in the dB
// domain as configured and converted to linear watts at the boundary.
struct SimConfig {
  int n_ues = 20000;
  double cell_radius_m = 10000.0;
  double pathloss_exp = 4.0;
  double tx_power_dbm = 23.0;
  double noise_dbm = -132.0;
  double sinr_threshold_db = -10.0;
  double tti_ms = 0.125;
  double traffic_total_s = 2.0;
  double beta_alpha = 2.0;
  double beta_beta = 4.0;
  Scheme scheme = Scheme::KRepetition;
  std::vector<int> k_set{1, 2, 4, 6, 8};
  std::vector<int> c_set{12, 24, 36, 48};
  int n_rbs = 4;
  double latency_constraint_ms = 2.0;
  LearnConfig learn;
  std::uint64_t seed = 1;

  int max_c() const { return c_set.back(); }
  double tx_power_w() const;
  double noise_w() const;
  double sinr_threshold_lin() const;
  long horizon_ttis() const;

  // Throws std::invalid_argument naming the offending key.
  void validate() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dBm -> watts: 10^(p/10) mW.
inline double dbm_to_watt(double p_dbm) {
  return std::pow(10.0, p_dbm / 10.0) * 1e-3;
}

// One access round: K repetition TTIs plus feedback and processing.
inline int rtt_duration_ttis(int k) { return k + 3; }

// Latency budget in TTIs; rejects budgets that do not land on the TTI grid.
int latency_budget_ttis(const SimConfig& cfg);

// Flat key=value file with '#' comments. Unset keys keep the defaults
// above. GFNOMA_SEED in the environment overrides the seed field unless
// apply_env is cleared (manifest re-runs pin the recorded seed).
SimConfig load_config(const std::string& path);
SimConfig parse_config(const std::string& text, bool apply_env = true);
void save_config(const SimConfig& cfg, const std::string& path);
std::string config_to_text(const SimConfig& cfg);

}  // namespace gfnoma
