#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "gfnoma/rng.hpp"

namespace gfnoma {

// Fully connected ReLU network with a linear output layer, one output
// per action. Training state (RMSProp accumulators) lives next to the
// weights so a checkpoint restores the optimizer mid-run.
struct ValueNet {
  std::vector<int> dims;                 // input, hidden..., |A|
  std::vector<Eigen::MatrixXd> w;        // w[l]: dims[l+1] x dims[l]
  std::vector<Eigen::VectorXd> b;
  std::vector<Eigen::MatrixXd> rms_w;
  std::vector<Eigen::VectorXd> rms_b;

  int input_dim() const { return dims.front(); }
  int output_dim() const { return dims.back(); }
  long parameter_count() const;
};

// Uniform(-1,1)/sqrt(fan_in) weights, zero biases, zero accumulators.
// Draw order: layer by layer, output index outer, input index inner.
ValueNet net_init(const std::vector<int>& dims, RngStream& rng);

Eigen::VectorXd forward(const ValueNet& net, const Eigen::VectorXd& s);
Eigen::MatrixXd forward_batch(const ValueNet& net, const Eigen::MatrixXd& s);

// Index of the largest Q value; ties go to the lowest index.
int argmax_q(const Eigen::VectorXd& q);
int greedy_action(const ValueNet& net, const Eigen::VectorXd& s);

struct Minibatch {
  Eigen::MatrixXd s;   // input_dim x B
  Eigen::MatrixXd s2;  // input_dim x B
  Eigen::VectorXi a;
  Eigen::VectorXd r;
  std::vector<std::uint8_t> terminal;

  int size() const { return static_cast<int>(a.size()); }
};

struct NetGrad {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> b;
  double loss = 0.0;  // mean half-squared TD error over the batch
};

// Gradient of the mean half-squared TD error w.r.t. the online
// parameters. Targets are constants: y = r for terminal transitions,
// else r + gamma * Q_target(s', a*), with a* chosen by the online net
// when ddqn is set and by the target net otherwise.
NetGrad td_gradient(const ValueNet& online, const ValueNet& target,
                    const Minibatch& batch, double gamma, bool ddqn);

// accum <- rho*accum + (1-rho)*g^2; theta <- theta - lr*g/(sqrt(accum)+eps)
void rmsprop_step(ValueNet& net, const NetGrad& grad, double lr,
                  double rho = 0.95, double eps = 1e-6);

// Deep value copy; later online updates leave the copy untouched.
ValueNet copy_into_target(const ValueNet& online);

// Little-endian flat binary checkpoint: magic "GFNQNET1", u32 layer
// count, u32 dims, then per layer W, b and per layer rms_W, rms_b as
// f64 in column-major order.
void save_checkpoint(const ValueNet& net, const std::string& path);
ValueNet load_checkpoint(const std::string& path);

}  // namespace gfnoma
