#include "invdom/plate.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "invdom/errors.hpp"
#include "stencil.hpp"
#include "trace_util.hpp"

namespace invdom {

namespace {

constexpr std::size_t kGhostNodes = 3;

long long key(int i, int j) {
  return (static_cast<long long>(i) << 32) ^ static_cast<long long>(static_cast<unsigned>(j));
}

struct GhostRule {
  std::vector<std::pair<long, double>> weights;
  double component = 0.0;
};

// Exterior point at coordinate c on a lattice line, extrapolated from the
// polynomial with double zero at the crossing through kGhostNodes nodes.
std::optional<GhostRule> line_ghost(const CutCellGrid& g, int i, int j, bool along_row) {
  const auto& lc = along_row ? g.row(j) : g.col(i);
  if (!lc) return std::nullopt;
  const double h = g.spacing();
  const double c = along_row ? i * h : j * h;
  int sgn = 0;
  Crossing cr;
  if (c >= lc->hi.coord) {
    sgn = -1;
    cr = lc->hi;
  } else if (c <= lc->lo.coord) {
    sgn = 1;
    cr = lc->lo;
  } else {
    return std::nullopt;
  }
  const int start = sgn > 0 ? static_cast<int>(std::floor(cr.coord / h))
                            : static_cast<int>(std::ceil(cr.coord / h));
  std::vector<detail::Condition> conds{{0.0, 0}, {0.0, 1}};
  std::vector<long> cols;
  for (int k = 0; k < 8 && cols.size() < kGhostNodes; ++k) {
    const int m = start + sgn * k;
    const long idx = along_row ? g.index(m, j) : g.index(i, m);
    if (idx < 0) continue;
    conds.push_back({std::abs(m * h - cr.coord), 0});
    cols.push_back(idx);
  }
  if (cols.size() < kGhostNodes) return std::nullopt;
  const Eigen::VectorXd w = detail::stencil_weights(conds, -std::abs(c - cr.coord), 0);
  GhostRule rule;
  for (std::size_t r = 0; r < cols.size(); ++r) {
    rule.weights.emplace_back(cols[r], w(static_cast<Eigen::Index>(r + 2)));
  }
  rule.component = std::abs(along_row ? std::cos(cr.theta) : std::sin(cr.theta));
  return rule;
}

const std::vector<std::pair<long, double>>& ghost_weights(PlateOperator& op, int i, int j) {
  const long long k = key(i, j);
  auto it = op.ghosts.find(k);
  if (it != op.ghosts.end()) return it->second;
  const auto a = line_ghost(op.grid, i, j, true);
  const auto b = line_ghost(op.grid, i, j, false);
  std::vector<std::pair<long, double>> w;
  if (a && (!b || a->component >= b->component)) {
    w = a->weights;
  } else if (b) {
    w = b->weights;
  }
  return op.ghosts.emplace(k, std::move(w)).first->second;
}

struct Tap {
  int di, dj;
  double c;
};

constexpr Tap kBilaplacian[13] = {{0, 0, 20.0},  {1, 0, -8.0},  {-1, 0, -8.0}, {0, 1, -8.0},
                                  {0, -1, -8.0}, {1, 1, 2.0},   {1, -1, 2.0},  {-1, 1, 2.0},
                                  {-1, -1, 2.0}, {2, 0, 1.0},   {-2, 0, 1.0},  {0, 2, 1.0},
                                  {0, -2, 1.0}};

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

BoundaryTrace finish_trace(std::vector<detail::TraceSample> samples, std::size_t n_theta) {
  if (samples.empty()) throw Error(ErrorKind::GridTooCoarse, "no usable boundary crossings");
  BoundaryTrace t;
  t.thetas = theta_grid(n_theta);
  t.normal_derivative = detail::resample_periodic(std::move(samples), n_theta);
  t.grad_sq.resize(n_theta);
  for (std::size_t i = 0; i < n_theta; ++i) {
    t.grad_sq[i] = t.normal_derivative[i] * t.normal_derivative[i];
  }
  return t;
}

}  // namespace

double PlateOperator::value_at(const Eigen::VectorXd& u, int i, int j) const {
  const long idx = grid.index(i, j);
  if (idx >= 0) return u(idx);
  const auto it = ghosts.find(key(i, j));
  if (it == ghosts.end()) return 0.0;
  double v = 0.0;
  for (const auto& [col, w] : it->second) v += w * u(col);
  return v;
}

PlateOperator discretize_plate(const ConvexBody& d, double spacing, double exclusion) {
  PlateOperator op{CutCellGrid::from_body(d, spacing, exclusion), SparseMatrix(), {}, d.n_theta()};
  const std::size_t n = op.grid.size();
  if (n < 200) {
    throw Error(ErrorKind::GridTooCoarse,
                "only " + std::to_string(n) + " interior nodes; at least 200 required");
  }
  const double inv_h4 = 1.0 / std::pow(spacing, 4);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(16 * n);
  std::map<long, double> row;
  for (std::size_t p = 0; p < n; ++p) {
    const auto [i, j] = op.grid.nodes()[p];
    row.clear();
    for (const Tap& t : kBilaplacian) {
      const long idx = op.grid.index(i + t.di, j + t.dj);
      if (idx >= 0) {
        row[idx] += t.c;
      } else {
        for (const auto& [col, w] : ghost_weights(op, i + t.di, j + t.dj)) row[col] += t.c * w;
      }
    }
    for (const auto& [col, v] : row) {
      trip.emplace_back(static_cast<int>(p), static_cast<int>(col), v * inv_h4);
    }
  }
  const auto sz = static_cast<Eigen::Index>(n);
  op.matrix.resize(sz, sz);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  return op;
}

std::vector<PlateEigenPair> solve_clamped_plate(const PlateOperator& op, std::size_t j_max,
                                                const EigenOptions& opts) {
  if (j_max == 0) throw Error(ErrorKind::InvalidInput, "j_max must be >= 1");
  const EigenResult r = smallest_eigenpairs_general(op.matrix, j_max, opts);
  const double h = op.grid.spacing();
  std::vector<PlateEigenPair> out;
  out.reserve(j_max);
  for (std::size_t k = 0; k < j_max; ++k) {
    PlateEigenPair e;
    e.j = k + 1;
    e.lambda = r.values(static_cast<Eigen::Index>(k));
    e.u = r.vectors.col(static_cast<Eigen::Index>(k)) / h;
    e.lap_trace = plate_laplacian_trace(op, e.u);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<PlateEigenPair> solve_clamped_plate(const ConvexBody& d, std::size_t j_max,
                                                double spacing, const EigenOptions& opts) {
  return solve_clamped_plate(discretize_plate(d, spacing), j_max, opts);
}

BoundaryTrace plate_laplacian_trace(const PlateOperator& op, const Eigen::VectorXd& u) {
  std::vector<detail::TraceSample> samples;
  detail::for_each_line_walk(op.grid, u, 0.7, 0.0, 3, [&](const detail::LineWalk& w) {
    std::vector<detail::Condition> conds{{0.0, 0}, {0.0, 1}};
    for (double s : w.s) conds.push_back({s, 0});
    const Eigen::VectorXd wt = detail::stencil_weights(conds, 0.0, 2);
    double d2 = 0.0;
    for (std::size_t r = 0; r < w.values.size(); ++r) {
      d2 += wt(static_cast<Eigen::Index>(r + 2)) * w.values[r];
    }
    // The Hessian on the boundary is u_nn n n^T, so u_ss = u_nn (n . e)^2.
    samples.push_back({w.theta, d2 / (w.component * w.component)});
  });
  return finish_trace(std::move(samples), op.n_theta);
}

BoundaryTrace plate_laplacian_trace_stencil(const PlateOperator& op, const Eigen::VectorXd& u) {
  const double h = op.grid.spacing();
  Eigen::VectorXd lap(u.size());
  for (std::size_t p = 0; p < op.grid.size(); ++p) {
    const auto [i, j] = op.grid.nodes()[p];
    lap(static_cast<Eigen::Index>(p)) =
        (op.value_at(u, i + 1, j) + op.value_at(u, i - 1, j) + op.value_at(u, i, j + 1) +
         op.value_at(u, i, j - 1) - 4.0 * u(static_cast<Eigen::Index>(p))) /
        (h * h);
  }
  std::vector<detail::TraceSample> samples;
  detail::for_each_line_walk(op.grid, lap, 0.7, 1.0, 3, [&](const detail::LineWalk& w) {
    std::vector<detail::Condition> conds;
    for (double s : w.s) conds.push_back({s, 0});
    const Eigen::VectorXd wt = detail::stencil_weights(conds, 0.0, 0);
    double v = 0.0;
    for (std::size_t r = 0; r < w.values.size(); ++r) {
      v += wt(static_cast<Eigen::Index>(r)) * w.values[r];
    }
    samples.push_back({w.theta, v});
  });
  return finish_trace(std::move(samples), op.n_theta);
}

SFunction plate_s_function(const PlateEigenPair& e) {
  if (!(e.lambda > 0.0)) throw Error(ErrorKind::InvalidInput, "eigenvalue must be positive");
  SFunction s;
  s.j = e.j;
  s.thetas = e.lap_trace.thetas;
  s.sigma.resize(e.lap_trace.grad_sq.size());
  for (std::size_t i = 0; i < s.sigma.size(); ++i) s.sigma[i] = e.lap_trace.grad_sq[i] / e.lambda;
  return s;
}

double plate_identity_residual(const ConvexBody& d, const SFunction& s) {
  return weighted_integral(d, s.sigma) - 4.0;
}

double plate_eigenvalue_from_boundary(const ConvexBody& d, const BoundaryTrace& lap_trace) {
  return 0.25 * weighted_integral(d, lap_trace.grad_sq);
}

}  // namespace invdom
