#pragma once

// Clamped plate: lap^2 u = lambda u in D, u = du/dn = 0 on the boundary.

#include <Eigen/Dense>
#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "invdom/eigensolver.hpp"
#include "invdom/grid.hpp"
#include "invdom/sfunction.hpp"
#include "invdom/support.hpp"

namespace invdom {

inline constexpr double kPlateExclusion = 1e-2;

/// 13-point bilaplacian with exterior values eliminated through the clamped
/// conditions. The matrix is not symmetric.
struct PlateOperator {
  CutCellGrid grid;
  SparseMatrix matrix;
  /// Exterior lattice point -> weights on interior nodes.
  std::unordered_map<long long, std::vector<std::pair<long, double>>> ghosts;
  std::size_t n_theta = kDefaultNTheta;

  /// Value of a grid function at any lattice point, through the ghost rule outside.
  double value_at(const Eigen::VectorXd& u, int i, int j) const;
};

/// Throws GridTooCoarse.
PlateOperator discretize_plate(const ConvexBody& d, double spacing,
                               double exclusion = kPlateExclusion);

struct PlateEigenPair {
  std::size_t j = 0;
  double lambda = 0.0;
  Eigen::VectorXd u;  // h^2 sum u^2 = 1
  /// normal_derivative holds d2u/dn2 = lap u on the boundary, grad_sq its square.
  BoundaryTrace lap_trace;
};

std::vector<PlateEigenPair> solve_clamped_plate(const PlateOperator& op, std::size_t j_max,
                                                const EigenOptions& opts = {});
std::vector<PlateEigenPair> solve_clamped_plate(const ConvexBody& d, std::size_t j_max,
                                                double spacing, const EigenOptions& opts = {});

/// Boundary lap u from the second normal derivative of a clamped one-sided fit.
BoundaryTrace plate_laplacian_trace(const PlateOperator& op, const Eigen::VectorXd& u);
/// Boundary lap u by extrapolating the 5-point Laplacian from interior nodes.
/// Independent of the route above; used as a cross-check.
BoundaryTrace plate_laplacian_trace_stencil(const PlateOperator& op, const Eigen::VectorXd& u);

/// sigma_j = |lap u_j|^2 / lambda_j.
SFunction plate_s_function(const PlateEigenPair& e);

/// Boundary integral of sigma P_D, minus 4.
double plate_identity_residual(const ConvexBody& d, const SFunction& s);

/// 1/4 of the boundary integral of |lap u|^2 P_D.
double plate_eigenvalue_from_boundary(const ConvexBody& d, const BoundaryTrace& lap_trace);

}  // namespace invdom
