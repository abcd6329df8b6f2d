#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfnoma/config.hpp"

namespace gfnoma {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

// Scenario presets. "paper" is the full-scale protocol; "desk" is the
// scaled-down profile every default workflow runs at.
struct Profile {
  int n_ues = 0;
  double traffic_total_s = 0.0;
  int train_episodes = 0;
  int eval_episodes = 0;
};

Profile profile_by_name(const std::string& name);

// Common resolution pipeline: config file (or defaults) -> profile ->
// explicit flag overrides. The mode/policy picks the latency constraint
// default (2 ms single-parameter, 8 ms multi-parameter) unless the file
// or a flag pins it.
struct CommonOptions {
  std::string config_path;
  std::string profile = "desk";
  std::string scheme;               // empty: keep config value
  std::optional<std::uint64_t> seed;
  std::optional<double> latency_ms;
  std::optional<int> episodes;      // train or eval count by command
  std::string out_dir = "runs/out";
};

struct TrainOptions {
  CommonOptions common;
  std::string mode = "single";  // single | cma
  int fixed_c = -1;             // single mode; default max(c_set)
  std::string from_manifest;
};

struct EvalOptions {
  CommonOptions common;
  std::string policy = "fixed";  // cma|single|leurc|fixed|random
  std::string checkpoint;        // single
  std::string checkpoint_k;      // cma
  std::string checkpoint_c;
  int bucket_ttis = 250;
  bool write_traces = false;
  std::string from_manifest;
};

struct CompareOptions {
  CommonOptions common;
  std::vector<std::string> policies;
  std::string checkpoint;  // reused for the learned policies, if named
  std::string checkpoint_k;
  std::string checkpoint_c;
};

int cmd_train(const TrainOptions& opts);
int cmd_eval(const EvalOptions& opts);
int cmd_compare(const CompareOptions& opts);
int cmd_verify();

// Resolved scenario + eval episode default for a command.
struct ResolvedRun {
  SimConfig cfg;
  int eval_episodes = 0;
};

ResolvedRun resolve_run(const CommonOptions& common, bool multi_parameter,
                        bool episodes_are_training);

}  // namespace gfnoma
