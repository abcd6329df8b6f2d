#include "gfnoma/agent.hpp"

#include <algorithm>
#include <stdexcept>

namespace gfnoma {

Minibatch ReplayMemory::sample(int n, RngStream& rng) const {
  if (size() == 0) throw std::logic_error("ReplayMemory::sample: empty");
  const int dim = static_cast<int>(buf_.front().s.size());
  Minibatch mb;
  mb.s.resize(dim, n);
  mb.s2.resize(dim, n);
  mb.a.resize(n);
  mb.r.resize(n);
  mb.terminal.resize(n);
  for (int i = 0; i < n; ++i) {
    const Transition& t = buf_[rng.next_int(size())];
    mb.s.col(i) = t.s;
    mb.s2.col(i) = t.s2;
    mb.a(i) = t.a;
    mb.r(i) = t.r;
    mb.terminal[i] = t.terminal ? 1 : 0;
  }
  return mb;
}

AgentBundle make_bundle(int state_dim, const std::vector<int>& action_set,
                        const LearnConfig& learn, RngStream& init_rng) {
  std::vector<int> dims;
  dims.push_back(state_dim);
  for (int h : learn.hidden_sizes) dims.push_back(h);
  dims.push_back(static_cast<int>(action_set.size()));
  AgentBundle b{net_init(dims, init_rng), ValueNet{},
                ReplayMemory(learn.replay_capacity), action_set};
  b.target = copy_into_target(b.online);
  return b;
}

int epsilon_greedy(const AgentBundle& bundle, const Eigen::VectorXd& s,
                   RngStream& rng) {
  const int n = static_cast<int>(bundle.action_set.size());
  if (rng.next_unit() < bundle.eps) return rng.next_int(n);
  return greedy_action(bundle.online, s);
}

double anneal_epsilon(int episode, const LearnConfig& learn) {
  const double horizon = learn.eps_decay_fraction * learn.episodes;
  if (horizon <= 0.0) return learn.eps_min;
  const double t = std::min(1.0, episode / horizon);
  return 1.0 + t * (learn.eps_min - 1.0);
}

SingleParamEnv::SingleParamEnv(GfNomaEnv& env, int fixed_c)
    : env_(env), fixed_c_(fixed_c) {
  if (env.c_index(fixed_c) < 0)
    throw std::invalid_argument("SingleParamEnv: fixed C not in c_set");
}

int SingleParamEnv::state_dim() const { return 5; }

Eigen::VectorXd SingleParamEnv::reset(int episode) {
  env_.reset(episode);
  auto v = env_.observation_vector(ObsMode::SingleAgent);
  return Eigen::Map<Eigen::VectorXd>(v.data(), v.size());
}

TrainEnv::Out SingleParamEnv::step(int action_index) {
  const int k = env_.config().k_set.at(action_index);
  auto out = env_.step({k, fixed_c_});
  auto v = env_.observation_vector(ObsMode::SingleAgent);
  Out o;
  o.state = Eigen::Map<Eigen::VectorXd>(v.data(), v.size());
  o.reward = out.reward;
  o.terminal = out.done;
  o.episode_end = out.done;
  return o;
}

namespace {

void learn_step(AgentBundle& bundle, const LearnConfig& learn,
                RngStream& sample_rng, double& loss_sum, int& loss_count) {
  if (bundle.memory.size() < learn.minibatch) return;
  const Minibatch mb = bundle.memory.sample(learn.minibatch, sample_rng);
  const NetGrad grad =
      td_gradient(bundle.online, bundle.target, mb, learn.gamma, learn.ddqn);
  rmsprop_step(bundle.online, grad, learn.lr);
  ++bundle.grad_steps;
  loss_sum += grad.loss;
  ++loss_count;
  if (bundle.grad_steps % learn.target_sync_every == 0)
    bundle.target = copy_into_target(bundle.online);
}

}  // namespace

TrainResult train_single(const LearnConfig& learn, TrainEnv& env,
                         const std::vector<int>& action_set,
                         std::uint64_t master_seed) {
  RngStream init_rng(master_seed, Stream::NetInit, 0);
  TrainResult result{make_bundle(env.state_dim(), action_set, learn, init_rng),
                     {}};
  AgentBundle& bundle = result.bundle;

  for (int ep = 0; ep < learn.episodes; ++ep) {
    bundle.eps = anneal_epsilon(ep, learn);
    RngStream explore(master_seed, Stream::Exploration, ep);
    RngStream sample_rng(master_seed, Stream::ReplaySampling, ep);

    Eigen::VectorXd s = env.reset(ep);
    double total = 0.0;
    double loss_sum = 0.0;
    int loss_count = 0;
    int steps = 0;
    while (true) {
      const int a = epsilon_greedy(bundle, s, explore);
      TrainEnv::Out out = env.step(a);
      bundle.memory.push({s, out.state, a, out.reward, out.terminal});
      ++bundle.step_count;
      learn_step(bundle, learn, sample_rng, loss_sum, loss_count);
      total += out.reward;
      ++steps;
      s = std::move(out.state);
      if (out.episode_end) break;
    }
    result.curve.push_back({ep, steps ? total / steps : 0.0, total, steps,
                            bundle.eps,
                            loss_count ? loss_sum / loss_count : 0.0});
  }
  return result;
}

std::vector<double> cma_state(const GfNomaEnv& env) {
  return env.observation_vector(ObsMode::MultiAgent);
}

CmaTrainResult train_cma(const SimConfig& cfg, GfNomaEnv& env) {
  const LearnConfig& learn = cfg.learn;
  const std::uint64_t master = cfg.seed;
  const int state_dim = 7 * learn.m_obs;

  RngStream init_k(master, Stream::NetInit, 0);
  RngStream init_c(master, Stream::NetInit, 1);
  CmaTrainResult result{make_bundle(state_dim, cfg.k_set, learn, init_k),
                        make_bundle(state_dim, cfg.c_set, learn, init_c),
                        {}};
  AgentBundle& bk = result.k_bundle;
  AgentBundle& bc = result.c_bundle;

  auto state_of = [&]() {
    auto v = cma_state(env);
    return Eigen::Map<Eigen::VectorXd>(v.data(), v.size()).eval();
  };

  for (int ep = 0; ep < learn.episodes; ++ep) {
    bk.eps = bc.eps = anneal_epsilon(ep, learn);
    RngStream explore_k(master, Stream::Exploration, ep, 0);
    RngStream explore_c(master, Stream::Exploration, ep, 1);
    RngStream sample_k(master, Stream::ReplaySampling, ep, 0);
    RngStream sample_c(master, Stream::ReplaySampling, ep, 1);

    env.reset(ep);
    Eigen::VectorXd s = state_of();
    double total = 0.0;
    double loss_sum = 0.0;
    int loss_count = 0;
    int steps = 0;
    while (true) {
      const int ak = epsilon_greedy(bk, s, explore_k);
      const int ac = epsilon_greedy(bc, s, explore_c);
      const auto out = env.step({cfg.k_set[ak], cfg.c_set[ac]});
      const Eigen::VectorXd s2 = state_of();
      bk.memory.push({s, s2, ak, out.reward, out.done});
      bc.memory.push({s, s2, ac, out.reward, out.done});
      ++bk.step_count;
      ++bc.step_count;
      learn_step(bk, learn, sample_k, loss_sum, loss_count);
      learn_step(bc, learn, sample_c, loss_sum, loss_count);
      total += out.reward;
      ++steps;
      s = s2;
      if (out.done) break;
    }
    result.curve.push_back({ep, steps ? total / steps : 0.0, total, steps,
                            bk.eps,
                            loss_count ? loss_sum / loss_count : 0.0});
  }
  return result;
}

}  // namespace gfnoma
