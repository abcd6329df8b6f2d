#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "gfnoma/config.hpp"
#include "gfnoma/env.hpp"
#include "gfnoma/replay.hpp"
#include "gfnoma/valuenet.hpp"

namespace gfnoma {

// One Q-learner: online/target nets, its replay memory and its slice of
// the action space (repetition values or CTU counts).
struct AgentBundle {
  ValueNet online;
  ValueNet target;
  ReplayMemory memory;
  std::vector<int> action_set;
  double eps = 1.0;
  long step_count = 0;
  long grad_steps = 0;
};

AgentBundle make_bundle(int state_dim, const std::vector<int>& action_set,
                        const LearnConfig& learn, RngStream& init_rng);

// eps-greedy over the bundle's action set; greedy ties break to the
// lowest index. Exactly one uniform draw, plus one more on the random
// branch, so the stream advances identically across policies.
int epsilon_greedy(const AgentBundle& bundle, const Eigen::VectorXd& s,
                   RngStream& rng);

// Linear decay from 1.0 to eps_min over the first eps_decay_fraction of
// episodes, constant afterwards.
double anneal_epsilon(int episode, const LearnConfig& learn);

// Minimal environment surface the Q-learning loop needs. The GF-NOMA
// environment and the self-test MDP both sit behind it.
class TrainEnv {
 public:
  struct Out {
    Eigen::VectorXd state;
    double reward = 0.0;
    bool terminal = false;     // true end state: bootstrap with y = r
    bool episode_end = false;  // stop stepping (includes truncation)
  };

  virtual ~TrainEnv() = default;
  virtual int state_dim() const = 0;
  virtual Eigen::VectorXd reset(int episode) = 0;
  virtual Out step(int action_index) = 0;
};

// Repetition-value control with a pinned CTU count.
class SingleParamEnv final : public TrainEnv {
 public:
  SingleParamEnv(GfNomaEnv& env, int fixed_c);

  int state_dim() const override;
  Eigen::VectorXd reset(int episode) override;
  Out step(int action_index) override;

  GfNomaEnv& env() { return env_; }

 private:
  GfNomaEnv& env_;
  int fixed_c_;
};

struct EpisodeRow {
  int episode = 0;
  double mean_reward = 0.0;  // per step
  double total_reward = 0.0;
  int steps = 0;
  double eps = 0.0;
  double loss_mean = 0.0;
};

struct TrainResult {
  AgentBundle bundle;
  std::vector<EpisodeRow> curve;
};

// One-agent training loop: eps-greedy rollouts, per-step minibatch
// updates once the memory holds one batch, target sync every
// target_sync_every gradient steps.
TrainResult train_single(const LearnConfig& learn, TrainEnv& env,
                         const std::vector<int>& action_set,
                         std::uint64_t master_seed);

struct CmaTrainResult {
  AgentBundle k_bundle;
  AgentBundle c_bundle;
  std::vector<EpisodeRow> curve;
};

// Two cooperating agents over {K, C}: both see the same multi-slot
// state, act simultaneously, receive the common reward, and train on
// strictly separate memories and exploration streams.
CmaTrainResult train_cma(const SimConfig& cfg, GfNomaEnv& env);

// The shared state both CMA agents consume (the multi-agent layout).
std::vector<double> cma_state(const GfNomaEnv& env);

}  // namespace gfnoma
