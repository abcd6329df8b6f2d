#include "gfnoma/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "gfnoma/agent.hpp"
#include "gfnoma/csv.hpp"
#include "gfnoma/metrics.hpp"
#include "gfnoma/policy.hpp"
#include "gfnoma/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace gfnoma {

Profile profile_by_name(const std::string& name) {
  if (name == "desk") return {2000, 0.5, 300, 50};
  if (name == "paper") return {20000, 2.0, 1000, 1000};
  throw ConfigError("unknown profile '" + name + "' (desk|paper)");
}

namespace {

bool config_text_has_key(const std::string& text, const std::string& key) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq);
    k.erase(0, k.find_first_not_of(" \t"));
    k.erase(k.find_last_not_of(" \t") + 1);
    if (k == key) return true;
  }
  return false;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void ensure_dir(const std::string& dir) { fs::create_directories(dir); }

void write_manifest(const json& j, const std::string& out_dir) {
  std::ofstream out(fs::path(out_dir) / "manifest.json");
  if (!out) throw ConfigError("cannot write manifest in '" + out_dir + "'");
  out << j.dump(2) << "\n";
}

json base_manifest(const std::string& command, const SimConfig& cfg) {
  json j;
  j["tool"] = "gfnoma";
  j["version"] = kVersion;
  j["command"] = command;
  j["config_text"] = config_to_text(cfg);
  return j;
}

std::unique_ptr<Policy> make_policy(const std::string& name,
                                    const SimConfig& cfg,
                                    const std::string& checkpoint,
                                    const std::string& checkpoint_k,
                                    const std::string& checkpoint_c) {
  if (name == "fixed") return std::make_unique<FixedPolicy>(cfg);
  if (name == "random") return std::make_unique<RandomPolicy>(cfg.seed);
  if (name == "leurc") return std::make_unique<LeUrcPolicy>(cfg);
  if (name == "single") {
    if (checkpoint.empty())
      throw ConfigError("policy 'single' needs --checkpoint");
    return std::make_unique<SingleDqnPolicy>(load_checkpoint(checkpoint),
                                             cfg.max_c());
  }
  if (name == "cma") {
    if (checkpoint_k.empty() || checkpoint_c.empty())
      throw ConfigError("policy 'cma' needs --checkpoint-k and --checkpoint-c");
    return std::make_unique<CmaPolicy>(load_checkpoint(checkpoint_k),
                                       load_checkpoint(checkpoint_c));
  }
  throw ConfigError("unknown policy '" + name +
                    "' (cma|single|leurc|fixed|random)");
}

}  // namespace

ResolvedRun resolve_run(const CommonOptions& common, bool multi_parameter,
                        bool episodes_are_training) {
  const std::string text =
      common.config_path.empty() ? std::string() : slurp(common.config_path);
  SimConfig cfg = parse_config(text);
  const Profile prof = profile_by_name(common.profile);
  if (!config_text_has_key(text, "n_ues")) cfg.n_ues = prof.n_ues;
  if (!config_text_has_key(text, "traffic_total_s"))
    cfg.traffic_total_s = prof.traffic_total_s;
  if (!config_text_has_key(text, "episodes"))
    cfg.learn.episodes = prof.train_episodes;
  if (!config_text_has_key(text, "latency_constraint_ms") &&
      !common.latency_ms.has_value())
    cfg.latency_constraint_ms = multi_parameter ? 8.0 : 2.0;

  if (!common.scheme.empty()) cfg.scheme = scheme_from_string(common.scheme);
  if (common.seed.has_value()) cfg.seed = *common.seed;
  if (common.latency_ms.has_value()) cfg.latency_constraint_ms = *common.latency_ms;

  int eval_episodes = prof.eval_episodes;
  if (common.episodes.has_value()) {
    if (episodes_are_training)
      cfg.learn.episodes = *common.episodes;
    else
      eval_episodes = *common.episodes;
  }
  cfg.validate();
  return {cfg, eval_episodes};
}

int cmd_train(const TrainOptions& opts) {
  SimConfig cfg;
  std::string mode = opts.mode;
  int fixed_c = opts.fixed_c;
  if (!opts.from_manifest.empty()) {
    const json j = json::parse(slurp(opts.from_manifest));
    cfg = parse_config(j.at("config_text").get<std::string>(), false);
    mode = j.at("mode").get<std::string>();
    if (j.contains("fixed_c")) fixed_c = j.at("fixed_c").get<int>();
  } else {
    cfg = resolve_run(opts.common, mode == "cma", true).cfg;
  }
  if (mode != "single" && mode != "cma")
    throw ConfigError("train: --mode must be single or cma");
  if (mode == "cma" && fixed_c >= 0)
    throw ConfigError("train: --fixed-c only applies to --mode=single");
  if (mode == "single" && fixed_c < 0) fixed_c = cfg.max_c();

  const std::string& out_dir = opts.common.out_dir;
  ensure_dir(out_dir);
  save_config(cfg, (fs::path(out_dir) / "config.txt").string());

  json manifest = base_manifest("train", cfg);
  manifest["mode"] = mode;
  json artifacts;

  if (mode == "single") {
    manifest["fixed_c"] = fixed_c;
    GfNomaEnv env(cfg);
    SingleParamEnv train_env(env, fixed_c);
    const TrainResult result =
        train_single(cfg.learn, train_env, cfg.k_set, cfg.seed);
    write_curve_csv(result.curve, (fs::path(out_dir) / "curve.csv").string());
    save_checkpoint(result.bundle.online,
                    (fs::path(out_dir) / "qnet.ck").string());
    artifacts["curve_csv"] = "curve.csv";
    artifacts["checkpoint"] = "qnet.ck";
  } else {
    GfNomaEnv env(cfg);
    const CmaTrainResult result = train_cma(cfg, env);
    write_curve_csv(result.curve, (fs::path(out_dir) / "curve.csv").string());
    save_checkpoint(result.k_bundle.online,
                    (fs::path(out_dir) / "qnet_k.ck").string());
    save_checkpoint(result.c_bundle.online,
                    (fs::path(out_dir) / "qnet_c.ck").string());
    artifacts["curve_csv"] = "curve.csv";
    artifacts["checkpoint_k"] = "qnet_k.ck";
    artifacts["checkpoint_c"] = "qnet_c.ck";
  }
  manifest["artifacts"] = artifacts;
  write_manifest(manifest, out_dir);
  std::cout << "train: wrote " << out_dir << " (" << cfg.learn.episodes
            << " episodes, scheme " << to_string(cfg.scheme) << ", mode "
            << mode << ")\n";
  return kExitOk;
}

int cmd_eval(const EvalOptions& opts) {
  SimConfig cfg;
  std::string policy_name = opts.policy;
  int eval_episodes = 0;
  int bucket_ttis = opts.bucket_ttis;
  if (!opts.from_manifest.empty()) {
    const json j = json::parse(slurp(opts.from_manifest));
    cfg = parse_config(j.at("config_text").get<std::string>(), false);
    policy_name = j.at("policy").get<std::string>();
    eval_episodes = j.at("eval_episodes").get<int>();
    bucket_ttis = j.at("bucket_ttis").get<int>();
  } else {
    const ResolvedRun run = resolve_run(opts.common, policy_name == "cma", false);
    cfg = run.cfg;
    eval_episodes = run.eval_episodes;
  }
  if (bucket_ttis <= 0) throw ConfigError("eval: --bucket-ttis must be > 0");

  auto policy = make_policy(policy_name, cfg, opts.checkpoint,
                            opts.checkpoint_k, opts.checkpoint_c);

  const std::string& out_dir = opts.common.out_dir;
  ensure_dir(out_dir);
  save_config(cfg, (fs::path(out_dir) / "config.txt").string());

  const EvalResult result = evaluate(cfg, *policy, eval_episodes);
  write_episodes_csv(result.episodes,
                     (fs::path(out_dir) / "episodes.csv").string());
  write_bucket_csv(bucket_table(result.traces, bucket_ttis),
                   (fs::path(out_dir) / "metrics.csv").string());

  // Per-step summary of the transmission outcome counts.
  struct Acc {
    double sum = 0.0, sq = 0.0;
    long n = 0;
    void add(double v) { sum += v; sq += v * v; ++n; }
    double mean() const { return n ? sum / n : 0.0; }
    double stddev() const {
      if (n < 2) return 0.0;
      const double m = mean();
      return std::sqrt(std::max(0.0, (sq - n * m * m) / (n - 1)));
    }
  };
  Acc succ, non_coll, coll, dec_fail;
  for (const auto& trace : result.traces) {
    for (const StepRecord& s : trace) {
      succ.add(s.v_sd);
      non_coll.add(s.v_sc);
      coll.add(s.n_transmitting - s.v_sc);
      dec_fail.add(s.v_ud);
    }
  }
  {
    std::ofstream out(fs::path(out_dir) / "summary.csv");
    out << "metric,mean_per_step,stddev\n";
    auto row = [&](const char* name, const Acc& a) {
      out << name << "," << format_double(a.mean()) << ","
          << format_double(a.stddev()) << "\n";
    };
    row("succ", succ);
    row("non_coll", non_coll);
    row("coll", coll);
    row("dec_fail", dec_fail);
  }

  if (opts.write_traces) {
    const fs::path tdir = fs::path(out_dir) / "traces";
    ensure_dir(tdir.string());
    char name[32];
    for (size_t i = 0; i < result.traces.size(); ++i) {
      std::snprintf(name, sizeof(name), "episode_%04zu.csv", i);
      write_trace_csv(result.traces[i], (tdir / name).string());
    }
  }

  json manifest = base_manifest("eval", cfg);
  manifest["policy"] = policy_name;
  manifest["eval_episodes"] = eval_episodes;
  manifest["bucket_ttis"] = bucket_ttis;
  json artifacts;
  artifacts["episodes_csv"] = "episodes.csv";
  artifacts["metrics_csv"] = "metrics.csv";
  artifacts["summary_csv"] = "summary.csv";
  manifest["artifacts"] = artifacts;
  write_manifest(manifest, out_dir);

  const Summary served = [&] {
    std::vector<double> xs;
    for (const auto& e : result.episodes) xs.push_back(e.served);
    return summarize(xs);
  }();
  std::cout << "eval: policy=" << policy_name << " episodes=" << eval_episodes
            << " served/episode=" << served.mean << " (sd " << served.stddev
            << ")\n"
            << "per-step means: succ=" << succ.mean()
            << " non_coll=" << non_coll.mean() << " coll=" << coll.mean()
            << " dec_fail=" << dec_fail.mean() << "\n";
  return kExitOk;
}

int cmd_compare(const CompareOptions& opts) {
  if (opts.policies.size() < 2)
    throw ConfigError("compare: need at least two --policies");
  bool any_cma = false;
  for (const auto& p : opts.policies) any_cma |= (p == "cma");
  const ResolvedRun run = resolve_run(opts.common, any_cma, false);

  const std::string& out_dir = opts.common.out_dir;
  ensure_dir(out_dir);
  save_config(run.cfg, (fs::path(out_dir) / "config.txt").string());

  std::vector<CompareRow> rows;
  for (const auto& name : opts.policies) {
    auto policy = make_policy(name, run.cfg, opts.checkpoint,
                              opts.checkpoint_k, opts.checkpoint_c);
    const EvalResult r = evaluate(run.cfg, *policy, run.eval_episodes);
    rows.push_back({name, r.mean_served(), 1.0});
    write_episodes_csv(
        r.episodes, (fs::path(out_dir) / ("episodes_" + name + ".csv")).string());
  }
  const double base = rows.front().mean_served;
  for (auto& row : rows)
    row.ratio_vs_first = base != 0.0 ? row.mean_served / base : 0.0;
  write_compare_csv(rows, (fs::path(out_dir) / "compare.csv").string());

  json manifest = base_manifest("compare", run.cfg);
  json policies = json::array();
  for (const auto& p : opts.policies) policies.push_back(p);
  manifest["policies"] = policies;
  manifest["eval_episodes"] = run.eval_episodes;
  manifest["artifacts"] = {{"compare_csv", "compare.csv"}};
  write_manifest(manifest, out_dir);

  std::cout << "policy,mean_served,ratio_vs_first\n";
  for (const auto& row : rows)
    std::cout << row.policy << "," << row.mean_served << ","
              << row.ratio_vs_first << "\n";
  return kExitOk;
}

int cmd_verify() {
  const auto suites = run_verification();
  bool all_pass = true;
  long total_cases = 0;
  for (const auto& s : suites) {
    std::cout << "SUITE " << s.name << ": " << (s.pass ? "PASS" : "FAIL")
              << " (" << s.cases << " cases"
              << (s.detail.empty() ? "" : ", " + s.detail) << ")\n";
    all_pass &= s.pass;
    total_cases += s.cases;
  }
  std::cout << (all_pass ? "verify: all suites passed, " : "verify: FAILED, ")
            << suites.size() << " suites, " << total_cases << " cases\n";
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace gfnoma
