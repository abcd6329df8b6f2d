#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "gfnoma/rng.hpp"
#include "gfnoma/valuenet.hpp"

namespace gfnoma {

struct Transition {
  Eigen::VectorXd s;
  Eigen::VectorXd s2;
  int a = 0;
  double r = 0.0;
  bool terminal = false;
};

// Fixed-capacity ring buffer with strict FIFO eviction and uniform
// sampling with replacement.
class ReplayMemory {
 public:
  explicit ReplayMemory(int capacity) : capacity_(capacity) {
    buf_.reserve(capacity);
  }

  void push(Transition t) {
    if (static_cast<int>(buf_.size()) < capacity_) {
      buf_.push_back(std::move(t));
    } else {
      buf_[cursor_] = std::move(t);
    }
    cursor_ = (cursor_ + 1) % capacity_;
    ++push_count_;
  }

  int size() const { return static_cast<int>(buf_.size()); }
  int capacity() const { return capacity_; }
  std::uint64_t push_count() const { return push_count_; }

  // ith oldest surviving transition, i in [0, size)
  const Transition& oldest(int i) const {
    if (static_cast<int>(buf_.size()) < capacity_) return buf_[i];
    return buf_[(cursor_ + i) % capacity_];
  }

  Minibatch sample(int n, RngStream& rng) const;

 private:
  int capacity_;
  std::vector<Transition> buf_;
  int cursor_ = 0;
  std::uint64_t push_count_ = 0;
};

}  // namespace gfnoma
