#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "gfnoma/oracle.hpp"
#include "gfnoma/valuenet.hpp"
#include "test_util.hpp"

using namespace gfnoma;

namespace {

Minibatch random_batch(int in_dim, int n_actions, int B, RngStream& rng,
                       double terminal_p = 0.1) {
  Minibatch mb;
  mb.s.resize(in_dim, B);
  mb.s2.resize(in_dim, B);
  mb.a.resize(B);
  mb.r.resize(B);
  mb.terminal.resize(B);
  for (int i = 0; i < B; ++i) {
    for (int j = 0; j < in_dim; ++j) {
      mb.s(j, i) = 2.0 * rng.next_unit() - 1.0;
      mb.s2(j, i) = 2.0 * rng.next_unit() - 1.0;
    }
    mb.a(i) = rng.next_int(n_actions);
    mb.r(i) = 2.0 * rng.next_unit() - 1.0;
    mb.terminal[i] = rng.next_unit() < terminal_p ? 1 : 0;
  }
  return mb;
}

}  // namespace

TEST_CASE("init shapes, parameter count and reproducibility") {
  RngStream r1(1, Stream::NetInit, 0);
  RngStream r2(1, Stream::NetInit, 0);
  const ValueNet a = net_init({5, 128, 128, 5}, r1);
  const ValueNet b = net_init({5, 128, 128, 5}, r2);
  // 5*128+128 + 128*128+128 + 128*5+5
  CHECK(a.parameter_count() == 17925);
  for (size_t l = 0; l < a.w.size(); ++l) {
    CHECK(eq(a.w[l], b.w[l]));
    CHECK(a.b[l].isZero());
    CHECK(a.rms_w[l].isZero());
    const double bound = 1.0 / std::sqrt(static_cast<double>(a.dims[l]));
    CHECK(a.w[l].cwiseAbs().maxCoeff() <= bound);
  }
  RngStream r3(2, Stream::NetInit, 0);
  Eigen::VectorXd s = Eigen::VectorXd::Ones(5);
  CHECK(forward(net_init({5, 128, 128, 5}, r3), s).allFinite());
}

TEST_CASE("forward pass closed forms") {
  ValueNet zero;
  zero.dims = {3, 4, 2};
  zero.w = {Eigen::MatrixXd::Zero(4, 3), Eigen::MatrixXd::Zero(2, 4)};
  zero.b = {Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(2)};
  CHECK(forward(zero, Eigen::Vector3d(1.0, -2.0, 3.0)).isZero());

  ValueNet id;
  id.dims = {2, 2};
  id.w = {Eigen::MatrixXd::Identity(2, 2)};
  id.b = {Eigen::VectorXd::Zero(2)};
  const Eigen::Vector2d x(0.3, -0.7);
  CHECK(eq(forward(id, x), Eigen::Vector2d(0.3, -0.7)));

  // Hand-computed 2-2-2 net.
  ValueNet net;
  net.dims = {2, 2, 2};
  Eigen::MatrixXd w0(2, 2), w1(2, 2);
  w0 << 1.0, -1.0, 0.5, 2.0;
  w1 << 1.0, 1.0, -1.0, 3.0;
  net.w = {w0, w1};
  Eigen::VectorXd b0(2), b1(2);
  b0 << 0.1, -0.2;
  b1 << 0.0, 1.0;
  net.b = {b0, b1};
  // x=(1,2): z0 = (1-2+0.1, 0.5+4-0.2) = (-0.9, 4.3); relu = (0, 4.3)
  // out = (0+4.3+0, -0+12.9+1) = (4.3, 13.9)
  const Eigen::VectorXd q = forward(net, Eigen::Vector2d(1.0, 2.0));
  CHECK(q(0) == doctest::Approx(4.3).epsilon(1e-12));
  CHECK(q(1) == doctest::Approx(13.9).epsilon(1e-12));

  CHECK_THROWS(forward(net, Eigen::Vector3d(1, 2, 3)));
}

TEST_CASE("relu nets with zero bias are positively homogeneous") {
  RngStream init(3, Stream::NetInit, 0);
  ValueNet net = net_init({4, 8, 8, 3}, init);
  RngStream rng(4);
  for (int i = 0; i < 50; ++i) {
    Eigen::VectorXd s(4);
    for (int j = 0; j < 4; ++j) s(j) = 2.0 * rng.next_unit() - 1.0;
    const double c = 0.1 + 3.0 * rng.next_unit();
    const Eigen::VectorXd lhs = forward(net, (c * s).eval());
    const Eigen::VectorXd rhs = c * forward(net, s);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("argmax ties break to the lowest index") {
  Eigen::VectorXd q(3);
  q << 0.1, 0.9, 0.3;
  CHECK(argmax_q(q) == 1);
  Eigen::VectorXd tie(2);
  tie << 0.5, 0.5;
  CHECK(argmax_q(tie) == 0);
}

TEST_CASE("td gradient reduces to rewards at gamma zero") {
  RngStream init(5, Stream::NetInit, 0);
  const ValueNet online = net_init({3, 8, 4}, init);
  RngStream init_t(5, Stream::NetInit, 1);
  const ValueNet target = net_init({3, 8, 4}, init_t);
  RngStream rng(6);
  const Minibatch mb = random_batch(3, 4, 16, rng);
  const NetGrad g0 = td_gradient(online, target, mb, 0.0, true);
  // With gamma=0 the target is r whatever the next state; compare with
  // a batch whose next states are scrambled.
  Minibatch scrambled = mb;
  scrambled.s2.setRandom();
  const NetGrad g1 = td_gradient(online, target, scrambled, 0.0, true);
  for (size_t l = 0; l < g0.w.size(); ++l) {
    CHECK((g0.w[l] - g1.w[l]).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((g0.b[l] - g1.b[l]).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("fixed point has zero gradient") {
  // All-zero net, zero rewards, terminal transitions: y = r = 0 = Q.
  ValueNet zero;
  zero.dims = {2, 3};
  zero.w = {Eigen::MatrixXd::Zero(3, 2)};
  zero.b = {Eigen::VectorXd::Zero(3)};
  zero.rms_w = {Eigen::MatrixXd::Zero(3, 2)};
  zero.rms_b = {Eigen::VectorXd::Zero(3)};
  Minibatch mb;
  mb.s = Eigen::MatrixXd::Random(2, 8);
  mb.s2 = Eigen::MatrixXd::Random(2, 8);
  mb.a = Eigen::VectorXi::Zero(8);
  mb.r = Eigen::VectorXd::Zero(8);
  mb.terminal.assign(8, 1);
  const NetGrad g = td_gradient(zero, zero, mb, 0.9, true);
  CHECK(g.loss == doctest::Approx(0.0));
  CHECK(g.w[0].isZero());
  CHECK(g.b[0].isZero());
}

TEST_CASE("analytic gradient matches central differences") {
  RngStream init(7, Stream::NetInit, 0);
  const ValueNet online = net_init({4, 8, 6, 3}, init);
  RngStream init_t(7, Stream::NetInit, 1);
  const ValueNet target = net_init({4, 8, 6, 3}, init_t);
  RngStream rng(8);
  double worst = 0.0;
  long skipped = 0;
  for (int b = 0; b < 5; ++b) {
    const Minibatch mb = random_batch(4, 3, 16, rng);
    const FdCheckResult fd =
        fd_check_td_gradient(online, target, mb, 0.5, true, 1e-5);
    worst = std::max(worst, fd.max_rel_err);
    skipped += fd.skipped;
    CHECK(fd.probes > 0);
  }
  CHECK(worst <= 1e-4);
  CHECK(skipped == 0);
}

TEST_CASE("ddqn equals target argmax when the nets coincide") {
  RngStream init(9, Stream::NetInit, 0);
  const ValueNet net = net_init({3, 8, 4}, init);
  RngStream rng(10);
  const Minibatch mb = random_batch(3, 4, 16, rng);
  const NetGrad a = td_gradient(net, net, mb, 0.7, true);
  const NetGrad b = td_gradient(net, net, mb, 0.7, false);
  for (size_t l = 0; l < a.w.size(); ++l)
    CHECK((a.w[l] - b.w[l]).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("rmsprop updates") {
  RngStream init(11, Stream::NetInit, 0);
  ValueNet net = net_init({2, 4, 2}, init);
  const ValueNet before = net;

  NetGrad zero;
  for (size_t l = 0; l < net.w.size(); ++l) {
    zero.w.push_back(Eigen::MatrixXd::Zero(net.w[l].rows(), net.w[l].cols()));
    zero.b.push_back(Eigen::VectorXd::Zero(net.b[l].size()));
  }
  rmsprop_step(net, zero, 0.01);
  for (size_t l = 0; l < net.w.size(); ++l) CHECK(eq(net.w[l], before.w[l]));

  NetGrad ones = zero;
  for (size_t l = 0; l < net.w.size(); ++l) {
    ones.w[l].setOnes();
    ones.b[l].setOnes();
  }
  rmsprop_step(net, ones, 0.0);  // lr=0: accumulators move, weights do not
  for (size_t l = 0; l < net.w.size(); ++l) {
    CHECK(eq(net.w[l], before.w[l]));
    CHECK(net.rms_w[l].minCoeff() > 0.0);
  }
}

TEST_CASE("rmsprop scalar fixed point") {
  ValueNet net;
  net.dims = {1, 1};
  net.w = {Eigen::MatrixXd::Zero(1, 1)};
  net.b = {Eigen::VectorXd::Zero(1)};
  net.rms_w = {Eigen::MatrixXd::Zero(1, 1)};
  net.rms_b = {Eigen::VectorXd::Zero(1)};
  NetGrad g;
  g.w = {Eigen::MatrixXd::Ones(1, 1)};
  g.b = {Eigen::VectorXd::Zero(1)};
  const double lr = 0.05;
  double prev = net.w[0](0, 0);
  double step = 0.0;
  for (int i = 0; i < 400; ++i) {
    rmsprop_step(net, g, lr);
    step = prev - net.w[0](0, 0);
    prev = net.w[0](0, 0);
  }
  // accumulator -> 1, so the step approaches lr/(1+eps).
  CHECK(step == doctest::Approx(lr / (1.0 + 1e-6)).epsilon(1e-6));
}

TEST_CASE("rmsprop accumulators stay nonnegative") {
  RngStream init(12, Stream::NetInit, 0);
  ValueNet net = net_init({3, 6, 2}, init);
  RngStream rng(13);
  for (int it = 0; it < 50; ++it) {
    NetGrad g;
    for (size_t l = 0; l < net.w.size(); ++l) {
      g.w.push_back(Eigen::MatrixXd::Random(net.w[l].rows(), net.w[l].cols()));
      g.b.push_back(Eigen::VectorXd::Random(net.b[l].size()));
    }
    rmsprop_step(net, g, 0.01);
    for (size_t l = 0; l < net.w.size(); ++l) {
      CHECK(net.rms_w[l].minCoeff() >= 0.0);
      CHECK(net.rms_b[l].minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("target copies are deep and idempotent") {
  RngStream init(14, Stream::NetInit, 0);
  ValueNet online = net_init({3, 8, 4}, init);
  ValueNet target = copy_into_target(online);
  RngStream rng(15);
  Eigen::VectorXd s(3);
  for (int j = 0; j < 3; ++j) s(j) = rng.next_unit();
  CHECK(eq(forward(online, s), forward(target, s)));

  const Eigen::VectorXd before = forward(target, s);
  NetGrad g;
  for (size_t l = 0; l < online.w.size(); ++l) {
    g.w.push_back(Eigen::MatrixXd::Ones(online.w[l].rows(), online.w[l].cols()));
    g.b.push_back(Eigen::VectorXd::Ones(online.b[l].size()));
  }
  rmsprop_step(online, g, 0.1);
  CHECK(eq(forward(target, s), before));
  const ValueNet twice = copy_into_target(copy_into_target(online));
  CHECK(eq(forward(twice, s), forward(online, s)));
}

TEST_CASE("checkpoint roundtrip is exact") {
  RngStream init(16, Stream::NetInit, 0);
  ValueNet net = net_init({4, 8, 3}, init);
  NetGrad g;
  for (size_t l = 0; l < net.w.size(); ++l) {
    g.w.push_back(Eigen::MatrixXd::Random(net.w[l].rows(), net.w[l].cols()));
    g.b.push_back(Eigen::VectorXd::Random(net.b[l].size()));
  }
  rmsprop_step(net, g, 0.01);  // make accumulators nontrivial

  const auto dir = std::filesystem::temp_directory_path() / "gfnoma_ck_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "net.ck").string();
  save_checkpoint(net, path);
  const ValueNet loaded = load_checkpoint(path);
  CHECK(loaded.dims == net.dims);
  for (size_t l = 0; l < net.w.size(); ++l) {
    CHECK(eq(loaded.w[l], net.w[l]));
    CHECK(eq(loaded.b[l], net.b[l]));
    CHECK(eq(loaded.rms_w[l], net.rms_w[l]));
    CHECK(eq(loaded.rms_b[l], net.rms_b[l]));
  }
  CHECK_THROWS(load_checkpoint((dir / "missing.ck").string()));
}
