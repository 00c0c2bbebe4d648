#pragma once

// Reconstruction of a support function from s-function data through the
// quadratic system sum_{k,m} A_{k,m}(j) alpha_k alpha_m = rhs.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "invdom/sfunction.hpp"
#include "invdom/support.hpp"

namespace invdom {

/// phi_0 = 1, phi_{2k-1} = cos k theta, phi_{2k} = sin k theta.
struct BasisElement {
  std::size_t k = 0;     // angular order
  bool sine = false;
  SupportFn phi;         // the basis function as a (signed) Fourier series
  ConvexBody g;          // P_g - P_h = phi
  ConvexBody h;
};

struct BasisSpec {
  std::size_t order = 0;  // highest angular order K; size() = 2K + 1
  std::vector<BasisElement> elements;
  std::size_t size() const noexcept { return elements.size(); }
  std::size_t n_theta() const noexcept { return elements.front().g.n_theta(); }
};

/// `margin` is the lower bound of h + h'' on the bodies G_k for k >= 2.
BasisSpec build_basis(std::size_t order, std::size_t n_theta = kDefaultNTheta,
                      double margin = 1.0);

/// |x| f(x / |x|), zero at the origin.
std::function<double(Point)> positive_homogeneous_extension(std::function<double(double)> f);

enum class RhsKind { Membrane, Plate };
double rhs_value(RhsKind kind) noexcept;

struct QuadraticSystem {
  std::vector<Eigen::MatrixXd> a;  // a[j](k, m)
  double rhs = 2.0;
};

/// A[j](k, m) as the difference of boundary integrals over G_k and H_k.
/// Throws DataDirectionMismatch unless every sigma is sampled on the basis grid.
QuadraticSystem assemble_coefficients(const BasisSpec& basis, const std::vector<SFunction>& data,
                                      RhsKind kind);
/// Same matrix from the closed form of sigma phi_m (phi_k + phi_k'').
QuadraticSystem assemble_coefficients_direct(const BasisSpec& basis,
                                             const std::vector<SFunction>& data, RhsKind kind);

/// r_j = alpha^T A_j alpha - rhs.
std::vector<double> residual(const Eigen::VectorXd& alpha, const QuadraticSystem& sys);

/// Sum alpha_k phi_k as a support function of order (alpha.size() - 1) / 2.
SupportFn support_from_alpha(const Eigen::VectorXd& alpha);

struct SolveOptions {
  double penalty_weight = 1e2;       // mu in front of the convexity penalty
  std::size_t penalty_samples = 256;
  double eps_conv = kDefaultConvexityTol;
  std::size_t max_iterations = 500;
  double gradient_tol = 1e-13;
  double step_tol = 1e-13;
  double cost_tol = 1e-8;   // stop when an accepted step lowers the objective by less, relatively
  /// Coefficients held at their initial value.
  std::vector<std::size_t> fixed;
};

struct ReconstructionResult {
  Eigen::VectorXd alpha;
  SupportFn support;
  std::vector<double> residuals;
  double convexity_margin = 0.0;
  bool non_convex = false;
  /// Of the residual Jacobian over the free coefficients, at the solution.
  Eigen::VectorXd singular_values;
  std::size_t iterations = 0;
  double objective = 0.0;  // sum r_j^2 + penalty
  std::vector<std::size_t> fixed;
};

/// Disk fit: alpha_0 from the first equation alone, all other modes zero.
Eigen::VectorXd default_initial_guess(const QuadraticSystem& sys);

/// Indices of the translation coefficients (cos theta, sin theta). Data that
/// do not change under translation of the domain (plate, or c = 0) leave the
/// system degenerate along them, so callers hold them fixed.
std::vector<std::size_t> translation_modes(const QuadraticSystem& sys);

/// Damped Gauss-Newton (Levenberg-Marquardt) on sum r_j^2 plus the convexity
/// penalty mu sum max(0, -(h + h''))^2. Throws NoDescent.
ReconstructionResult solve_quadratic_system(const QuadraticSystem& sys, const Eigen::VectorXd& init,
                                            const SolveOptions& opts = {});

struct MultiStartOptions {
  std::size_t starts = 8;
  std::uint64_t seed = 1;
  double perturbation = 0.3;      // relative size of random start offsets
  double residual_tol = -1.0;     // max |r_j|; negative means 0.025 rhs
  double distinct_tol = 1e-3;     // relative coefficient distance below which solutions merge
};

/// Start 0 is the disk fit; the others are seeded perturbations of it. Returns
/// the distinct convex solutions with max |r_j| within tolerance, best first.
std::vector<ReconstructionResult> solve_multistart(const QuadraticSystem& sys,
                                                   const SolveOptions& opts,
                                                   const MultiStartOptions& ms);

struct Reconstruction {
  ConvexBody body;
  bool projected = false;
};

/// Body with support sum alpha_k phi_k. Throws NonConvexSupport when the margin
/// is below -eps_conv, unless `project` is set; projection clips the curvature
/// density at zero, Fejer-smooths it at the same order and re-integrates.
Reconstruction reconstruct_domain(const ReconstructionResult& result, bool project = false,
                                  double eps_conv = kDefaultConvexityTol,
                                  std::size_t n_theta = kDefaultNTheta);

struct Decomposition {
  Eigen::VectorXd alpha;
  bool truncated = false;  // h had modes above the basis order
};

Decomposition decompose_support(const SupportFn& h, const BasisSpec& basis);

/// r_j evaluated in the rearranged form: the integral of sigma P over the
/// boundary of sum_{alpha_k > 0} alpha_k G_k + sum_{alpha_k < 0} |alpha_k| H_k,
/// minus the same over the boundary with G and H exchanged, minus rhs.
double index_split_residual(const Eigen::VectorXd& alpha, const BasisSpec& basis,
                            const SFunction& data, double rhs);

}  // namespace invdom
