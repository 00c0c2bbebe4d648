#pragma once

// Smallest eigenpairs of sparse operators by shift-invert subspace iteration
// with Rayleigh-Ritz projection. The start block is drawn from a seeded
// generator, so results are reproducible for a fixed seed.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstddef>
#include <cstdint>

namespace invdom {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenOptions {
  std::size_t guard = 6;          // extra block vectors beyond the requested count
  double tol = 1e-8;              // relative Ritz residual on the inverse operator
  std::size_t max_iterations = 2000;
  std::uint64_t seed = 20240611;
};

struct EigenResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, unit Euclidean norm
  std::size_t iterations = 0;
  double max_residual = 0.0;
};

/// For symmetric positive definite K. Throws ConvergenceFailure.
EigenResult smallest_eigenpairs_symmetric(const SparseMatrix& k, std::size_t nev,
                                          const EigenOptions& opts = {});

/// For a general real matrix whose smallest eigenvalues are real and positive
/// up to discretization noise. A conjugate pair with tiny imaginary part is
/// returned as a real basis of its invariant subspace, both entries carrying
/// the real part. Throws ConvergenceFailure.
EigenResult smallest_eigenpairs_general(const SparseMatrix& a, std::size_t nev,
                                        const EigenOptions& opts = {});

}  // namespace invdom
