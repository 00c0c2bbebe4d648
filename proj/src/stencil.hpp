#pragma once

// One-dimensional polynomial stencils with value and first-derivative
// conditions (confluent Vandermonde).

#include <Eigen/Dense>
#include <cmath>
#include <vector>

namespace invdom::detail {

struct Condition {
  double s = 0.0;
  int order = 0;  // 0: value, 1: first derivative
};

/// Weights w with p^{(d)}(s0) = sum_r w_r c_r for the unique polynomial of
/// degree conds.size() - 1 matching the conditions c_r.
inline Eigen::VectorXd stencil_weights(const std::vector<Condition>& conds, double s0, int d) {
  const auto n = static_cast<Eigen::Index>(conds.size());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const double s = conds[static_cast<std::size_t>(r)].s;
    const int o = conds[static_cast<std::size_t>(r)].order;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (o == 0) {
        v(r, c) = std::pow(s, static_cast<double>(c));
      } else if (c >= 1) {
        v(r, c) = static_cast<double>(c) * std::pow(s, static_cast<double>(c - 1));
      }
    }
  }
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Eigen::Index c = d; c < n; ++c) {
    double f = 1.0;
    for (int m = 0; m < d; ++m) f *= static_cast<double>(c - m);
    e(c) = f * std::pow(s0, static_cast<double>(c - d));
  }
  return v.transpose().partialPivLu().solve(e);
}

}  // namespace invdom::detail
