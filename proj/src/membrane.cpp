#include "invdom/membrane.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invdom/errors.hpp"
#include "stencil.hpp"
#include "trace_util.hpp"

namespace invdom {

namespace {

constexpr int kDirs[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};

void check_samples(const ConvexBody& d, std::size_t n) {
  if (n != d.n_theta()) {
    throw Error(ErrorKind::DataDirectionMismatch,
                "trace has " + std::to_string(n) + " directions, body quadrature has " +
                    std::to_string(d.n_theta()));
  }
}

double weighted_integral(const ConvexBody& d, const std::vector<double>& f) {
  check_samples(d, f.size());
  const auto h = d.support_samples();
  std::vector<double> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] * h[i];
  return boundary_integral_normal_fn(d, g);
}

}  // namespace

DiscreteOperator discretize(const ConvexBody& d, PotentialSpec q, double spacing,
                            double exclusion) {
  if (q.c < 0.0) throw Error(ErrorKind::InvalidInput, "potential strength c must be >= 0");
  if (q.c > 0.0) {
    const auto h = d.support_samples();
    const double min_h = *std::min_element(h.begin(), h.end());
    if (min_h > 0.0) {
      throw Error(ErrorKind::OriginInsideDomain, "c > 0 requires the origin outside the domain");
    }
    // Distance from the origin to D is -min h.
    if (-min_h < 5.0 * spacing) {
      throw Error(ErrorKind::OriginInsideDomain,
                  "origin closer than 5 grid spacings to the domain");
    }
  }
  return discretize(CutCellGrid::from_body(d, spacing, exclusion), q, d.n_theta());
}

DiscreteOperator discretize(CutCellGrid grid, PotentialSpec q, std::size_t n_theta) {
  if (grid.size() < kMinNodes) {
    throw Error(ErrorKind::GridTooCoarse, "only " + std::to_string(grid.size()) +
                                              " interior nodes; at least " +
                                              std::to_string(kMinNodes) + " required");
  }
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(5 * grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const auto [i, j] = grid.nodes()[n];
    double diag = q(grid.position(n));
    for (const auto& dir : kDirs) {
      const long nb = grid.index(i + dir[0], j + dir[1]);
      if (nb >= 0) {
        diag += inv_h2;
        trip.emplace_back(static_cast<int>(n), static_cast<int>(nb), -inv_h2);
      } else {
        const double arm = std::min(grid.boundary_distance(n, dir[0], dir[1]), h);
        diag += 1.0 / (h * arm);
      }
    }
    trip.emplace_back(static_cast<int>(n), static_cast<int>(n), diag);
  }
  DiscreteOperator op{std::move(grid), q, SparseMatrix(), n_theta};
  const auto sz = static_cast<Eigen::Index>(op.grid.size());
  op.matrix.resize(sz, sz);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  return op;
}

std::vector<EigenPair2D> solve_eigen(const DiscreteOperator& op, std::size_t j_max,
                                     const EigenOptions& opts) {
  if (j_max == 0) throw Error(ErrorKind::InvalidInput, "j_max must be >= 1");
  const EigenResult r = smallest_eigenpairs_symmetric(op.matrix, j_max, opts);
  const double h = op.grid.spacing();
  std::vector<EigenPair2D> out;
  out.reserve(j_max);
  for (std::size_t k = 0; k < j_max; ++k) {
    EigenPair2D e;
    e.j = k + 1;
    e.lambda = r.values(static_cast<Eigen::Index>(k));
    e.u = r.vectors.col(static_cast<Eigen::Index>(k)) / h;
    e.trace = boundary_gradient_trace(op, e.u);
    out.push_back(std::move(e));
  }
  return out;
}

double rayleigh_quotient(const DiscreteOperator& op, const Eigen::VectorXd& u) {
  if (u.size() != op.matrix.rows()) {
    throw Error(ErrorKind::InvalidInput, "grid function size does not match the operator");
  }
  const double uu = u.squaredNorm();
  if (!(uu > 0.0)) throw Error(ErrorKind::ZeroFunction, "grid function is identically zero");
  return u.dot(op.matrix * u) / uu;
}

BoundaryTrace boundary_gradient_trace(const DiscreteOperator& op, const Eigen::VectorXd& u) {
  std::vector<detail::TraceSample> samples;
  detail::for_each_line_walk(
      op.grid, u, 0.5, 0.5, 3, [&](const detail::LineWalk& w) {
        std::vector<detail::Condition> conds{{0.0, 0}};
        for (double s : w.s) conds.push_back({s, 0});
        const Eigen::VectorXd wt = detail::stencil_weights(conds, 0.0, 1);
        double du = 0.0;
        for (std::size_t r = 0; r < w.values.size(); ++r) {
          du += wt(static_cast<Eigen::Index>(r + 1)) * w.values[r];
        }
        // Along the inward line direction e, du/ds = (du/dn)(n . e).
        samples.push_back({w.theta, du / w.component});
      });
  if (samples.empty()) throw Error(ErrorKind::GridTooCoarse, "no usable boundary crossings");
  BoundaryTrace t;
  t.thetas = theta_grid(op.n_theta);
  t.normal_derivative = detail::resample_periodic(std::move(samples), op.n_theta);
  t.grad_sq.resize(op.n_theta);
  for (std::size_t i = 0; i < op.n_theta; ++i) {
    t.grad_sq[i] = t.normal_derivative[i] * t.normal_derivative[i];
  }
  return t;
}

SFunction s_function(const EigenPair2D& e) {
  if (!(e.lambda > 0.0)) throw Error(ErrorKind::InvalidInput, "eigenvalue must be positive");
  SFunction s;
  s.j = e.j;
  s.thetas = e.trace.thetas;
  s.sigma.resize(e.trace.grad_sq.size());
  for (std::size_t i = 0; i < s.sigma.size(); ++i) s.sigma[i] = e.trace.grad_sq[i] / e.lambda;
  return s;
}

double eigenvalue_from_boundary(const ConvexBody& d, const BoundaryTrace& trace) {
  return 0.5 * weighted_integral(d, trace.grad_sq);
}

double eigenvalue_from_boundary_max(const ConvexBody& d, const std::vector<BoundaryTrace>& basis,
                                    std::size_t samples) {
  if (basis.empty()) throw Error(ErrorKind::InvalidInput, "empty eigenspace basis");
  if (basis.size() == 1) return eigenvalue_from_boundary(d, basis.front());
  const auto m = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = a; b < m; ++b) {
      const auto& ga = basis[static_cast<std::size_t>(a)].normal_derivative;
      const auto& gb = basis[static_cast<std::size_t>(b)].normal_derivative;
      check_samples(d, ga.size());
      check_samples(d, gb.size());
      std::vector<double> prod(ga.size());
      for (std::size_t i = 0; i < ga.size(); ++i) prod[i] = ga[i] * gb[i];
      gram(a, b) = gram(b, a) = 0.5 * weighted_integral(d, prod);
    }
  }
  if (m > 2) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().maxCoeff();
  }
  double best = -1e300;
  for (std::size_t k = 0; k < samples; ++k) {
    const double phi = kPi * static_cast<double>(k) / static_cast<double>(samples);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    best = std::max(best, c * c * gram(0, 0) + 2.0 * c * s * gram(0, 1) + s * s * gram(1, 1));
  }
  return best;
}

double basic_relation_residual(const ConvexBody& d, const SFunction& s) {
  return weighted_integral(d, s.sigma) - 2.0;
}

double shape_derivative(const ConvexBody& d, const BoundaryTrace& trace, const SupportFn& delta) {
  check_samples(d, trace.grad_sq.size());
  std::vector<double> f(trace.grad_sq.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = trace.grad_sq[i] * delta.value(trace.thetas[i]);
  return -boundary_integral_normal_fn(d, f);
}

bool multiple_eigenvalue(const std::vector<EigenPair2D>& eigs, std::size_t j, double rel_tol) {
  if (j == 0 || j > eigs.size()) throw Error(ErrorKind::InvalidInput, "eigen index out of range");
  const double lam = eigs[j - 1].lambda;
  const auto close = [&](std::size_t k) {
    return std::abs(eigs[k].lambda - lam) <= rel_tol * std::abs(lam);
  };
  return (j >= 2 && close(j - 2)) || (j < eigs.size() && close(j));
}

}  // namespace invdom
