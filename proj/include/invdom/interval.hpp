#pragma once

// Dirichlet problem -u'' + (c / x^2) u = lambda u on (a, b).

#include <cstddef>
#include <utility>
#include <vector>

namespace invdom {

struct IntervalProblem {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;  // potential strength, q(x) = c / x^2
  std::size_t j_max = 5;

  /// Throws InvalidInput for a >= b or c < 0, SingularPotential if c > 0 and 0 lies inside (a, b).
  void validate() const;
};

struct Eigen1D {
  std::size_t j = 0;  // 1-based
  double lambda = 0.0;
  std::vector<double> u;  // grid values including both endpoints, int u^2 = 1
  double dua = 0.0;       // u'(a), sign fixed so that u'(a) > 0
  double dub = 0.0;       // u'(b)
};

/// Eigenpairs 1..j_max of the second-order finite-difference operator on a
/// uniform grid with n_grid intervals (n_grid >= 64). The potential is only
/// evaluated at interior nodes, so a singular endpoint x = 0 is admissible.
std::vector<Eigen1D> solve_interval(const IntervalProblem& p, std::size_t n_grid);

/// Endpoint s-values J(a) = u'(a)^2 / lambda, J(b) = u'(b)^2 / lambda.
std::pair<double, double> s_values_1d(const Eigen1D& e);

/// J(b) b - J(a) a - 2.
double interval_identity_residual(const Eigen1D& e, const IntervalProblem& p);

enum class Endpoint { Left, Right };

/// b = 2 / J(b) (for a = 0), or a = -2 / J(a) (for b = 0).
double recover_endpoint(double j_value, Endpoint which);

/// Endpoint data after one Richardson step on grids n and 2n.
struct IntervalSValues {
  std::size_t j = 0;
  double lambda = 0.0;
  double ja = 0.0;
  double jb = 0.0;
};

std::vector<IntervalSValues> solve_interval_extrapolated(const IntervalProblem& p,
                                                         std::size_t n_grid);

}  // namespace invdom
