#pragma once

#include <Eigen/Core>

// Exact elementwise equality for matrices/vectors in tests.
template <typename A, typename B>
bool eq(const A& a, const B& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return ((a - b).template cwiseAbs().maxCoeff() == 0.0);
}
