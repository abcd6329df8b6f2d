// gfnoma — grant-free NOMA uplink simulator and resource-configuration
// trainer. Subcommands: train, eval, compare, verify.

#include <CLI11.hpp>
#include <iostream>

#include "gfnoma/harness.hpp"

namespace {

void add_common(CLI::App* cmd, gfnoma::CommonOptions& common,
                const char* episodes_help) {
  cmd->add_option("--config", common.config_path, "key=value config file");
  cmd->add_option("--profile", common.profile, "scenario preset (desk|paper)")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--scheme", common.scheme,
                  "transmission scheme (krep|proactive)")
      ->check(CLI::IsMember({"krep", "proactive"}));
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&common](std::uint64_t v) { common.seed = v; },
      "master seed (overrides config and GFNOMA_SEED)");
  cmd->add_option_function<double>(
      "--latency-ms", [&common](double v) { common.latency_ms = v; },
      "latency constraint in ms");
  cmd->add_option_function<int>(
      "--episodes", [&common](int v) { common.episodes = v; }, episodes_help);
  cmd->add_option("--out-dir", common.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grant-free NOMA uplink resource-configuration harness"};
  app.require_subcommand(1);

  gfnoma::TrainOptions train;
  auto* cmd_train = app.add_subcommand("train", "train a DQN controller");
  add_common(cmd_train, train.common, "training episodes");
  cmd_train->add_option("--mode", train.mode, "single | cma")
      ->check(CLI::IsMember({"single", "cma"}));
  cmd_train->add_option("--fixed-c", train.fixed_c,
                        "pinned CTU count in single mode (default max c_set)");
  cmd_train->add_option("--from-manifest", train.from_manifest,
                        "re-run a recorded training run");

  gfnoma::EvalOptions eval;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate a policy greedily");
  add_common(cmd_eval, eval.common, "evaluation episodes");
  cmd_eval->add_option("--policy", eval.policy,
                       "cma|single|leurc|fixed|random");
  cmd_eval->add_option("--checkpoint", eval.checkpoint,
                       "checkpoint for --policy=single");
  cmd_eval->add_option("--checkpoint-k", eval.checkpoint_k,
                       "K-agent checkpoint for --policy=cma");
  cmd_eval->add_option("--checkpoint-c", eval.checkpoint_c,
                       "C-agent checkpoint for --policy=cma");
  cmd_eval->add_option("--bucket-ttis", eval.bucket_ttis,
                       "TTI bucket width for metrics.csv");
  cmd_eval->add_flag("--traces", eval.write_traces,
                     "write per-episode trace CSVs");
  cmd_eval->add_option("--from-manifest", eval.from_manifest,
                       "re-run a recorded evaluation");

  gfnoma::CompareOptions compare;
  auto* cmd_compare =
      app.add_subcommand("compare", "evaluate several policies side by side");
  add_common(cmd_compare, compare.common, "evaluation episodes per policy");
  cmd_compare
      ->add_option("--policies", compare.policies,
                   "two or more of cma,single,leurc,fixed,random")
      ->delimiter(',');
  cmd_compare->add_option("--checkpoint", compare.checkpoint,
                          "checkpoint for the single policy");
  cmd_compare->add_option("--checkpoint-k", compare.checkpoint_k,
                          "K-agent checkpoint for the cma policy");
  cmd_compare->add_option("--checkpoint-c", compare.checkpoint_c,
                          "C-agent checkpoint for the cma policy");

  auto* cmd_verify =
      app.add_subcommand("verify", "run the oracle self-check suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? gfnoma::kExitOk : gfnoma::kExitUsage;
  }

  try {
    if (cmd_train->parsed()) return gfnoma::cmd_train(train);
    if (cmd_eval->parsed()) return gfnoma::cmd_eval(eval);
    if (cmd_compare->parsed()) return gfnoma::cmd_compare(compare);
    if (cmd_verify->parsed()) return gfnoma::cmd_verify();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gfnoma::kExitUsage;
  }
  return gfnoma::kExitUsage;
}
