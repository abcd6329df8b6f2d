#include "gfnoma/policy.hpp"

#include <stdexcept>

namespace gfnoma {

Action RandomPolicy::act(const GfNomaEnv& env) {
  if (!rng_) throw std::logic_error("RandomPolicy: begin_episode not called");
  const auto& cfg = env.config();
  const int ki = rng_->next_int(static_cast<int>(cfg.k_set.size()));
  const int ci = rng_->next_int(static_cast<int>(cfg.c_set.size()));
  return {cfg.k_set[ki], cfg.c_set[ci]};
}

LeUrcPolicy::LeUrcPolicy(const SimConfig& cfg)
    : fixed_k_(fixed_policy_action(cfg).k) {
  state_.fixed_k = fixed_k_;
}

Action LeUrcPolicy::act(const GfNomaEnv& env) {
  const RttObservation& obs = env.last_observation();
  state_.prev_c = obs.action_c;
  const double n_hat = le_predict(state_, obs.v_ic, obs.v_cc);
  const int c = le_choose_c(n_hat, env.config().c_set);
  return {state_.fixed_k, c};
}

Action SingleDqnPolicy::act(const GfNomaEnv& env) {
  auto v = env.observation_vector(ObsMode::SingleAgent);
  const Eigen::Map<Eigen::VectorXd> s(v.data(), v.size());
  return {env.config().k_set.at(greedy_action(net_, s)), fixed_c_};
}

Action CmaPolicy::act(const GfNomaEnv& env) {
  auto v = env.observation_vector(ObsMode::MultiAgent);
  const Eigen::Map<Eigen::VectorXd> s(v.data(), v.size());
  return {env.config().k_set.at(greedy_action(k_net_, s)),
          env.config().c_set.at(greedy_action(c_net_, s))};
}

}  // namespace gfnoma
