#include "gfnoma/toy_mdp.hpp"

#include <algorithm>
#include <cmath>

namespace gfnoma {

std::array<std::array<double, ToyMdp::n_actions>, ToyMdp::n_states>
toy_value_iteration(double gamma, int iterations) {
  std::array<std::array<double, ToyMdp::n_actions>, ToyMdp::n_states> q{};
  for (int it = 0; it < iterations; ++it) {
    auto next = q;
    for (int s = 0; s < ToyMdp::n_states; ++s) {
      for (int a = 0; a < ToyMdp::n_actions; ++a) {
        const auto o = ToyMdp::transition(s, a);
        const double v2 = std::max(q[o.next][0], q[o.next][1]);
        next[s][a] = o.reward + gamma * v2;
      }
    }
    double delta = 0.0;
    for (int s = 0; s < ToyMdp::n_states; ++s)
      for (int a = 0; a < ToyMdp::n_actions; ++a)
        delta = std::max(delta, std::abs(next[s][a] - q[s][a]));
    q = next;
    if (delta < 1e-12) break;
  }
  return q;
}

std::array<int, ToyMdp::n_states> toy_optimal_actions(double gamma) {
  const auto q = toy_value_iteration(gamma);
  std::array<int, ToyMdp::n_states> best{};
  for (int s = 0; s < ToyMdp::n_states; ++s)
    best[s] = q[s][0] >= q[s][1] ? 0 : 1;
  return best;
}

LearnConfig toy_learn_config(int max_steps) {
  LearnConfig learn;
  learn.lr = 2e-3;
  learn.gamma = 0.9;
  learn.eps_min = 0.05;
  learn.minibatch = 32;
  learn.replay_capacity = 2000;
  learn.target_sync_every = 100;
  learn.hidden_sizes = {16, 16};
  learn.m_obs = 1;
  learn.episodes = std::max(1, max_steps / 50);
  learn.eps_decay_fraction = 0.6;
  learn.ddqn = true;
  return learn;
}

bool toy_ddqn_reaches_optimal(std::uint64_t seed, int max_steps,
                              double gamma) {
  LearnConfig learn = toy_learn_config(max_steps);
  learn.gamma = gamma;
  ToyMdpEnv env(50);
  const TrainResult result =
      train_single(learn, env, std::vector<int>{0, 1}, seed);
  const auto optimal = toy_optimal_actions(gamma);
  for (int s = 0; s < ToyMdp::n_states; ++s) {
    const int a = greedy_action(result.bundle.online, ToyMdpEnv::encode(s));
    if (a != optimal[s]) return false;
  }
  return true;
}

}  // namespace gfnoma
