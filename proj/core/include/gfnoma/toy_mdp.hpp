#pragma once

#include <Eigen/Core>
#include <array>

#include "gfnoma/agent.hpp"

namespace gfnoma {

// Deterministic two-state MDP used as a learning self-test. The greedy
// immediate reward in state 0 (stay, +0.5) is a trap: the optimal
// policy forgoes it, moves to state 1 and collects +2 on the way back,
// so passing requires correct bootstrapping.
//
//   state 0: action 0 -> r=0.5, stay      action 1 -> r=0,   go to 1
//   state 1: action 0 -> r=2.0, go to 0   action 1 -> r=0,   stay
struct ToyMdp {
  static constexpr int n_states = 2;
  static constexpr int n_actions = 2;

  struct Outcome {
    int next = 0;
    double reward = 0.0;
  };

  static Outcome transition(int state, int action) {
    if (state == 0) return action == 0 ? Outcome{0, 0.5} : Outcome{1, 0.0};
    return action == 0 ? Outcome{0, 2.0} : Outcome{1, 0.0};
  }
};

// Exact Q* by value iteration; the independent reference for the
// learning self-test.
std::array<std::array<double, ToyMdp::n_actions>, ToyMdp::n_states>
toy_value_iteration(double gamma, int iterations = 10000);

std::array<int, ToyMdp::n_states> toy_optimal_actions(double gamma);

// TrainEnv wrapper: one-hot states, fixed-length episodes, truncation
// is not flagged terminal (the MDP is continuing).
class ToyMdpEnv final : public TrainEnv {
 public:
  explicit ToyMdpEnv(int episode_len = 50) : episode_len_(episode_len) {}

  int state_dim() const override { return ToyMdp::n_states; }

  Eigen::VectorXd reset(int /*episode*/) override {
    state_ = 0;
    steps_ = 0;
    return encode(state_);
  }

  Out step(int action) override {
    const auto o = ToyMdp::transition(state_, action);
    state_ = o.next;
    ++steps_;
    return {encode(state_), o.reward, false, steps_ >= episode_len_};
  }

  static Eigen::VectorXd encode(int state) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ToyMdp::n_states);
    v(state) = 1.0;
    return v;
  }

 private:
  int episode_len_;
  int state_ = 0;
  int steps_ = 0;
};

// Hyperparameters for the self-test: small net, fast schedule, at most
// `max_steps` environment steps in total.
LearnConfig toy_learn_config(int max_steps = 5000);

// Trains a fresh agent on the toy MDP and reports whether the greedy
// policy matches value iteration at every state.
bool toy_ddqn_reaches_optimal(std::uint64_t seed, int max_steps = 5000,
                              double gamma = 0.9);

}  // namespace gfnoma
