#pragma once

// Dirichlet problem -lap u + q u = lambda u on a convex body, q = c / |x|^2.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "invdom/eigensolver.hpp"
#include "invdom/grid.hpp"
#include "invdom/sfunction.hpp"
#include "invdom/support.hpp"

namespace invdom {

struct PotentialSpec {
  double c = 0.0;
  double operator()(Point x) const noexcept { return c > 0.0 ? c / (x.x * x.x + x.y * x.y) : 0.0; }
};

/// Default exclusion radius for near-boundary nodes, in units of the spacing.
inline constexpr double kMembraneExclusion = 1e-3;
/// Fewest interior nodes accepted by discretize.
inline constexpr std::size_t kMinNodes = 200;

/// Symmetric cut-cell discretization of -lap + q. Node values approximate u
/// at lattice points; the discrete L2 inner product is h^2 sum u v.
struct DiscreteOperator {
  CutCellGrid grid;
  PotentialSpec q;
  SparseMatrix matrix;
  std::size_t n_theta = kDefaultNTheta;  // trace resolution
};

/// Throws OriginInsideDomain when c > 0 and the origin is inside D or closer
/// than 5 spacings to it; GridTooCoarse for fewer than kMinNodes nodes.
DiscreteOperator discretize(const ConvexBody& d, PotentialSpec q, double spacing,
                            double exclusion = kMembraneExclusion);
/// Same on a prepared grid (e.g. a rectangle).
DiscreteOperator discretize(CutCellGrid grid, PotentialSpec q, std::size_t n_theta = kDefaultNTheta);

struct EigenPair2D {
  std::size_t j = 0;
  double lambda = 0.0;
  Eigen::VectorXd u;  // h^2 sum u^2 = 1
  BoundaryTrace trace;
};

std::vector<EigenPair2D> solve_eigen(const DiscreteOperator& op, std::size_t j_max,
                                     const EigenOptions& opts = {});

/// Discrete quotient (K u, u) / (u, u). Throws ZeroFunction.
double rayleigh_quotient(const DiscreteOperator& op, const Eigen::VectorXd& u);

/// du/dn at the boundary by a one-sided cubic along lattice lines through the
/// exact crossing, resampled onto op.n_theta directions. u must be unit-normalized.
BoundaryTrace boundary_gradient_trace(const DiscreteOperator& op, const Eigen::VectorXd& u);

/// sigma_j = |grad u_j|^2 / lambda_j.
SFunction s_function(const EigenPair2D& e);

/// 1/2 of the boundary integral of |grad u|^2 P_D.
double eigenvalue_from_boundary(const ConvexBody& d, const BoundaryTrace& trace);

/// Maximum of eigenvalue_from_boundary over unit combinations of an eigenspace
/// basis. Two-dimensional spaces are sampled at `samples` angles; larger ones
/// use the top eigenvalue of the Gram form.
double eigenvalue_from_boundary_max(const ConvexBody& d, const std::vector<BoundaryTrace>& basis,
                                    std::size_t samples = 64);

/// Boundary integral of sigma P_D, minus 2.
double basic_relation_residual(const ConvexBody& d, const SFunction& s);

/// -boundary integral of |grad u|^2 dP.
double shape_derivative(const ConvexBody& d, const BoundaryTrace& trace, const SupportFn& delta);

/// True when lambda_j has a neighbour within rel_tol (the derivative above is
/// then only defined up to the choice of eigenvector).
bool multiple_eigenvalue(const std::vector<EigenPair2D>& eigs, std::size_t j,
                         double rel_tol = 1e-3);

}  // namespace invdom
