#pragma once

#include <memory>
#include <string>

#include "gfnoma/baselines.hpp"
#include "gfnoma/env.hpp"
#include "gfnoma/valuenet.hpp"

namespace gfnoma {

// State in, action out. Every comparison policy (learned or analytic)
// goes through this surface so the evaluation harness can swap them by
// name.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual void begin_episode(int /*episode*/) {}
  virtual Action act(const GfNomaEnv& env) = 0;
};

class FixedPolicy final : public Policy {
 public:
  explicit FixedPolicy(const SimConfig& cfg)
      : action_(fixed_policy_action(cfg)) {}
  std::string name() const override { return "fixed"; }
  Action act(const GfNomaEnv&) override { return action_; }

 private:
  Action action_;
};

class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t master) : master_(master) {}
  std::string name() const override { return "random"; }
  void begin_episode(int episode) override {
    rng_ = std::make_unique<RngStream>(master_, Stream::Exploration, episode,
                                       kPolicyStreamTag);
  }
  Action act(const GfNomaEnv& env) override;

  static constexpr std::uint64_t kPolicyStreamTag = 1000;

 private:
  std::uint64_t master_;
  std::unique_ptr<RngStream> rng_;
};

class LeUrcPolicy final : public Policy {
 public:
  explicit LeUrcPolicy(const SimConfig& cfg);
  std::string name() const override { return "leurc"; }
  void begin_episode(int /*episode*/) override {
    state_ = LeState{};
    state_.fixed_k = fixed_k_;
  }
  Action act(const GfNomaEnv& env) override;

 private:
  int fixed_k_ = 8;
  LeState state_;
};

// Greedy repetition-value control from a trained checkpoint, CTU count
// pinned (the single-parameter configuration).
class SingleDqnPolicy final : public Policy {
 public:
  SingleDqnPolicy(ValueNet net, int fixed_c)
      : net_(std::move(net)), fixed_c_(fixed_c) {}
  std::string name() const override { return "single"; }
  Action act(const GfNomaEnv& env) override;

 private:
  ValueNet net_;
  int fixed_c_;
};

// Greedy joint control from the two CMA checkpoints.
class CmaPolicy final : public Policy {
 public:
  CmaPolicy(ValueNet k_net, ValueNet c_net)
      : k_net_(std::move(k_net)), c_net_(std::move(c_net)) {}
  std::string name() const override { return "cma"; }
  Action act(const GfNomaEnv& env) override;

 private:
  ValueNet k_net_;
  ValueNet c_net_;
};

}  // namespace gfnoma
