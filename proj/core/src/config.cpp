#include "gfnoma/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gfnoma {

std::string to_string(Scheme s) {
  return s == Scheme::KRepetition ? "krep" : "proactive";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "krep" || s == "k-repetition" || s == "krepetition")
    return Scheme::KRepetition;
  if (s == "proactive") return Scheme::Proactive;
  throw ConfigError("scheme: unknown value '" + s + "' (krep|proactive)");
}

double SimConfig::tx_power_w() const { return dbm_to_watt(tx_power_dbm); }
double SimConfig::noise_w() const { return dbm_to_watt(noise_dbm); }
double SimConfig::sinr_threshold_lin() const {
  return std::pow(10.0, sinr_threshold_db / 10.0);
}

long SimConfig::horizon_ttis() const {
  return static_cast<long>(std::ceil(traffic_total_s * 1000.0 / tti_ms));
}

int latency_budget_ttis(const SimConfig& cfg) {
  const double q = cfg.latency_constraint_ms / cfg.tti_ms;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9)
    throw ConfigError(
        "latency_constraint_ms: not an integral number of TTIs (" +
        std::to_string(q) + ")");
  return static_cast<int>(r);
}

namespace {

bool strictly_increasing_positive(const std::vector<int>& v) {
  if (v.empty()) return false;
  int prev = 0;
  for (int x : v) {
    if (x <= prev) return false;
    prev = x;
  }
  return true;
}

}  // namespace

void SimConfig::validate() const {
  if (n_ues < 0) throw ConfigError("n_ues: must be >= 0");
  if (cell_radius_m <= 0) throw ConfigError("cell_radius_m: must be > 0");
  if (tti_ms <= 0) throw ConfigError("tti_ms: must be > 0");
  if (traffic_total_s <= 0) throw ConfigError("traffic_total_s: must be > 0");
  if (beta_alpha <= 0) throw ConfigError("beta_alpha: must be > 0");
  if (beta_beta <= 0) throw ConfigError("beta_beta: must be > 0");
  if (n_rbs <= 0) throw ConfigError("n_rbs: must be > 0");
  if (!strictly_increasing_positive(k_set))
    throw ConfigError("k_set: must be nonempty, positive, strictly increasing");
  if (!strictly_increasing_positive(c_set))
    throw ConfigError("c_set: must be nonempty, positive, strictly increasing");
  for (int c : c_set)
    if (c % n_rbs != 0)
      throw ConfigError("c_set: C not divisible by F (c_set=" +
                        std::to_string(c) + ", n_rbs=" + std::to_string(n_rbs) +
                        ")");
  const int budget = latency_budget_ttis(*this);
  if (budget < rtt_duration_ttis(k_set.front()))
    throw ConfigError(
        "latency_constraint_ms: budget of " + std::to_string(budget) +
        " TTIs is shorter than one RTT at the smallest repetition value (" +
        std::to_string(rtt_duration_ttis(k_set.front())) + " TTIs)");
  if (learn.lr <= 0) throw ConfigError("lr: must be > 0");
  if (learn.gamma < 0 || learn.gamma >= 1)
    throw ConfigError("gamma: must be in [0, 1)");
  if (learn.eps_min <= 0 || learn.eps_min > 1)
    throw ConfigError("eps_min: must be in (0, 1]");
  if (learn.minibatch <= 0) throw ConfigError("minibatch: must be > 0");
  if (learn.minibatch > learn.replay_capacity)
    throw ConfigError("minibatch: exceeds replay_capacity");
  if (learn.m_obs < 1) throw ConfigError("m_obs: must be >= 1");
  if (learn.episodes <= 0) throw ConfigError("episodes: must be > 0");
  if (learn.eps_decay_fraction <= 0 || learn.eps_decay_fraction > 1)
    throw ConfigError("eps_decay_fraction: must be in (0, 1]");
  if (learn.target_sync_every <= 0)
    throw ConfigError("target_sync_every: must be > 0");
  for (int h : learn.hidden_sizes)
    if (h <= 0) throw ConfigError("hidden_sizes: must be positive");
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + v + "' as a number");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse '" + v + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": cannot parse '" + v + "' as a bool");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(static_cast<int>(parse_long(key, item)));
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

void apply_key(SimConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "n_ues") cfg.n_ues = static_cast<int>(parse_long(key, v));
  else if (key == "cell_radius_m") cfg.cell_radius_m = parse_double(key, v);
  else if (key == "pathloss_exp") cfg.pathloss_exp = parse_double(key, v);
  else if (key == "tx_power_dbm") cfg.tx_power_dbm = parse_double(key, v);
  else if (key == "noise_dbm") cfg.noise_dbm = parse_double(key, v);
  else if (key == "sinr_threshold_db") cfg.sinr_threshold_db = parse_double(key, v);
  else if (key == "tti_ms") cfg.tti_ms = parse_double(key, v);
  else if (key == "traffic_total_s") cfg.traffic_total_s = parse_double(key, v);
  else if (key == "beta_alpha") cfg.beta_alpha = parse_double(key, v);
  else if (key == "beta_beta") cfg.beta_beta = parse_double(key, v);
  else if (key == "scheme") cfg.scheme = scheme_from_string(trim(v));
  else if (key == "k_set") cfg.k_set = parse_int_list(key, v);
  else if (key == "c_set") cfg.c_set = parse_int_list(key, v);
  else if (key == "n_rbs") cfg.n_rbs = static_cast<int>(parse_long(key, v));
  else if (key == "latency_constraint_ms") cfg.latency_constraint_ms = parse_double(key, v);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(key, v));
  else if (key == "lr") cfg.learn.lr = parse_double(key, v);
  else if (key == "gamma") cfg.learn.gamma = parse_double(key, v);
  else if (key == "eps_min") cfg.learn.eps_min = parse_double(key, v);
  else if (key == "minibatch") cfg.learn.minibatch = static_cast<int>(parse_long(key, v));
  else if (key == "replay_capacity") cfg.learn.replay_capacity = static_cast<int>(parse_long(key, v));
  else if (key == "target_sync_every") cfg.learn.target_sync_every = static_cast<int>(parse_long(key, v));
  else if (key == "hidden_sizes") cfg.learn.hidden_sizes = parse_int_list(key, v);
  else if (key == "m_obs") cfg.learn.m_obs = static_cast<int>(parse_long(key, v));
  else if (key == "episodes") cfg.learn.episodes = static_cast<int>(parse_long(key, v));
  else if (key == "eps_decay_fraction") cfg.learn.eps_decay_fraction = parse_double(key, v);
  else if (key == "ddqn") cfg.learn.ddqn = parse_bool(key, v);
  else throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

SimConfig parse_config(const std::string& text, bool apply_env) {
  SimConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    apply_key(cfg, key, val);
  }
  if (apply_env) {
    if (const char* env = std::getenv("GFNOMA_SEED"))
      cfg.seed = static_cast<std::uint64_t>(parse_long("GFNOMA_SEED", env));
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_text(const SimConfig& cfg) {
  std::ostringstream o;
  o.precision(17);
  o << "n_ues = " << cfg.n_ues << "\n"
    << "cell_radius_m = " << cfg.cell_radius_m << "\n"
    << "pathloss_exp = " << cfg.pathloss_exp << "\n"
    << "tx_power_dbm = " << cfg.tx_power_dbm << "\n"
    << "noise_dbm = " << cfg.noise_dbm << "\n"
    << "sinr_threshold_db = " << cfg.sinr_threshold_db << "\n"
    << "tti_ms = " << cfg.tti_ms << "\n"
    << "traffic_total_s = " << cfg.traffic_total_s << "\n"
    << "beta_alpha = " << cfg.beta_alpha << "\n"
    << "beta_beta = " << cfg.beta_beta << "\n"
    << "scheme = " << to_string(cfg.scheme) << "\n"
    << "k_set = " << join(cfg.k_set) << "\n"
    << "c_set = " << join(cfg.c_set) << "\n"
    << "n_rbs = " << cfg.n_rbs << "\n"
    << "latency_constraint_ms = " << cfg.latency_constraint_ms << "\n"
    << "seed = " << cfg.seed << "\n"
    << "lr = " << cfg.learn.lr << "\n"
    << "gamma = " << cfg.learn.gamma << "\n"
    << "eps_min = " << cfg.learn.eps_min << "\n"
    << "minibatch = " << cfg.learn.minibatch << "\n"
    << "replay_capacity = " << cfg.learn.replay_capacity << "\n"
    << "target_sync_every = " << cfg.learn.target_sync_every << "\n"
    << "hidden_sizes = " << join(cfg.learn.hidden_sizes) << "\n"
    << "m_obs = " << cfg.learn.m_obs << "\n"
    << "episodes = " << cfg.learn.episodes << "\n"
    << "eps_decay_fraction = " << cfg.learn.eps_decay_fraction << "\n"
    << "ddqn = " << (cfg.learn.ddqn ? "true" : "false") << "\n";
  return o.str();
}

void save_config(const SimConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file '" + path + "'");
  out << config_to_text(cfg);
}

}  // namespace gfnoma
