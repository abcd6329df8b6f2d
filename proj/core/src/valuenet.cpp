#include "gfnoma/valuenet.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace gfnoma {

long ValueNet::parameter_count() const {
  long n = 0;
  for (size_t l = 0; l + 1 < dims.size(); ++l)
    n += static_cast<long>(dims[l + 1]) * dims[l] + dims[l + 1];
  return n;
}

ValueNet net_init(const std::vector<int>& dims, RngStream& rng) {
  if (dims.size() < 2)
    throw std::invalid_argument("net_init: need at least input and output");
  for (int d : dims)
    if (d <= 0) throw std::invalid_argument("net_init: dims must be positive");
  ValueNet net;
  net.dims = dims;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    const int in = dims[l];
    const int out = dims[l + 1];
    Eigen::MatrixXd w(out, in);
    const double scale = 1.0 / std::sqrt(static_cast<double>(in));
    for (int i = 0; i < out; ++i)
      for (int j = 0; j < in; ++j)
        w(i, j) = (2.0 * rng.next_unit() - 1.0) * scale;
    net.w.push_back(std::move(w));
    net.b.push_back(Eigen::VectorXd::Zero(out));
    net.rms_w.push_back(Eigen::MatrixXd::Zero(out, in));
    net.rms_b.push_back(Eigen::VectorXd::Zero(out));
  }
  return net;
}

Eigen::MatrixXd forward_batch(const ValueNet& net, const Eigen::MatrixXd& s) {
  if (s.rows() != net.input_dim())
    throw std::invalid_argument("forward: input dimension mismatch");
  Eigen::MatrixXd a = s;
  const size_t layers = net.w.size();
  for (size_t l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = (net.w[l] * a).colwise() + net.b[l];
    if (l + 1 < layers) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

Eigen::VectorXd forward(const ValueNet& net, const Eigen::VectorXd& s) {
  return forward_batch(net, s);
}

int argmax_q(const Eigen::VectorXd& q) {
  int best = 0;
  for (int i = 1; i < q.size(); ++i)
    if (q(i) > q(best)) best = i;
  return best;
}

int greedy_action(const ValueNet& net, const Eigen::VectorXd& s) {
  return argmax_q(forward(net, s));
}

NetGrad td_gradient(const ValueNet& online, const ValueNet& target,
                    const Minibatch& batch, double gamma, bool ddqn) {
  const int B = batch.size();
  const size_t layers = online.w.size();

  // Forward through the online net keeping layer activations.
  std::vector<Eigen::MatrixXd> act(layers + 1);
  act[0] = batch.s;
  for (size_t l = 0; l < layers; ++l) {
    Eigen::MatrixXd z = (online.w[l] * act[l]).colwise() + online.b[l];
    if (l + 1 < layers) z = z.cwiseMax(0.0);
    act[l + 1] = std::move(z);
  }
  const Eigen::MatrixXd& q = act[layers];

  // Bootstrap targets, held constant.
  const Eigen::MatrixXd q_target_next = forward_batch(target, batch.s2);
  Eigen::MatrixXd q_select_next;
  if (ddqn) q_select_next = forward_batch(online, batch.s2);
  const Eigen::MatrixXd& sel = ddqn ? q_select_next : q_target_next;

  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), B);
  double loss = 0.0;
  for (int i = 0; i < B; ++i) {
    double y = batch.r(i);
    if (!batch.terminal[i]) {
      const int a_star = argmax_q(sel.col(i));
      y += gamma * q_target_next(a_star, i);
    }
    const int a = batch.a(i);
    const double err = q(a, i) - y;
    delta(a, i) = err / B;
    loss += 0.5 * err * err;
  }
  loss /= B;

  // Backpropagate.
  NetGrad grad;
  grad.w.resize(layers);
  grad.b.resize(layers);
  grad.loss = loss;
  Eigen::MatrixXd d = std::move(delta);
  for (size_t l = layers; l-- > 0;) {
    grad.w[l].noalias() = d * act[l].transpose();
    grad.b[l] = d.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd prev = online.w[l].transpose() * d;
      d = prev.cwiseProduct(
          (act[l].array() > 0.0).cast<double>().matrix());
    }
  }
  return grad;
}

void rmsprop_step(ValueNet& net, const NetGrad& grad, double lr, double rho,
                  double eps) {
  for (size_t l = 0; l < net.w.size(); ++l) {
    net.rms_w[l] = rho * net.rms_w[l].array() +
                   (1.0 - rho) * grad.w[l].array().square();
    net.rms_b[l] = rho * net.rms_b[l].array() +
                   (1.0 - rho) * grad.b[l].array().square();
    net.w[l].array() -=
        lr * grad.w[l].array() / (net.rms_w[l].array().sqrt() + eps);
    net.b[l].array() -=
        lr * grad.b[l].array() / (net.rms_b[l].array().sqrt() + eps);
  }
}

ValueNet copy_into_target(const ValueNet& online) { return online; }

namespace {

constexpr char kMagic[8] = {'G', 'F', 'N', 'Q', 'N', 'E', 'T', '1'};

void write_matrix(std::ofstream& out, const Eigen::MatrixXd& m) {
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * m.size()));
}

void read_matrix(std::ifstream& in, Eigen::MatrixXd& m) {
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(double) * m.size()));
}

void write_vector(std::ofstream& out, const Eigen::VectorXd& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(sizeof(double) * v.size()));
}

void read_vector(std::ifstream& in, Eigen::VectorXd& v) {
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(sizeof(double) * v.size()));
}

}  // namespace

void save_checkpoint(const ValueNet& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint '" + path + "'");
  out.write(kMagic, 8);
  const std::uint32_t n = static_cast<std::uint32_t>(net.dims.size());
  out.write(reinterpret_cast<const char*>(&n), 4);
  for (int d : net.dims) {
    const std::uint32_t v = static_cast<std::uint32_t>(d);
    out.write(reinterpret_cast<const char*>(&v), 4);
  }
  for (size_t l = 0; l < net.w.size(); ++l) {
    write_matrix(out, net.w[l]);
    write_vector(out, net.b[l]);
  }
  for (size_t l = 0; l < net.w.size(); ++l) {
    write_matrix(out, net.rms_w[l]);
    write_vector(out, net.rms_b[l]);
  }
}

ValueNet load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("bad checkpoint magic in '" + path + "'");
  std::uint32_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 4);
  if (!in || n < 2 || n > 64)
    throw std::runtime_error("bad checkpoint header in '" + path + "'");
  ValueNet net;
  net.dims.resize(n);
  for (auto& d : net.dims) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 4);
    d = static_cast<int>(v);
  }
  for (size_t l = 0; l + 1 < net.dims.size(); ++l) {
    net.w.emplace_back(net.dims[l + 1], net.dims[l]);
    net.b.emplace_back(net.dims[l + 1]);
    read_matrix(in, net.w[l]);
    read_vector(in, net.b[l]);
  }
  for (size_t l = 0; l + 1 < net.dims.size(); ++l) {
    net.rms_w.emplace_back(net.dims[l + 1], net.dims[l]);
    net.rms_b.emplace_back(net.dims[l + 1]);
    read_matrix(in, net.rms_w[l]);
    read_vector(in, net.rms_b[l]);
  }
  if (!in) throw std::runtime_error("truncated checkpoint '" + path + "'");
  return net;
}

}  // namespace gfnoma
