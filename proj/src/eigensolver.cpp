#include "invdom/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <complex>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "invdom/errors.hpp"

namespace invdom {

namespace {

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& z) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  return qr.householderQ() * Eigen::MatrixXd::Identity(z.rows(), z.cols());
}

Eigen::MatrixXd random_block(Eigen::Index n, Eigen::Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd q(n, p);
  for (Eigen::Index c = 0; c < p; ++c)
    for (Eigen::Index r = 0; r < n; ++r) q(r, c) = dist(rng);
  return orthonormalize(q);
}

// Flip signs so that the entry of largest magnitude is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0.0) v = -v;
}

std::size_t block_size(std::size_t nev, const EigenOptions& opts, Eigen::Index n) {
  const std::size_t p = nev + std::max<std::size_t>(opts.guard, nev);
  return std::min<std::size_t>(p, static_cast<std::size_t>(n));
}

void check_request(const SparseMatrix& m, std::size_t nev) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidInput, "matrix must be square");
  if (nev == 0 || static_cast<Eigen::Index>(nev) > m.rows()) {
    throw Error(ErrorKind::InvalidInput, "requested eigenpair count out of range");
  }
}

}  // namespace

EigenResult smallest_eigenpairs_symmetric(const SparseMatrix& k, std::size_t nev,
                                          const EigenOptions& opts) {
  check_request(k, nev);
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(k);
  if (ldlt.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "LDLT factorization failed");
  }
  const Eigen::Index n = k.rows();
  const auto p = static_cast<Eigen::Index>(block_size(nev, opts, n));
  const auto want = static_cast<Eigen::Index>(nev);
  Eigen::MatrixXd q = random_block(n, p, opts.seed);

  double worst = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd z = ldlt.solve(q);
    Eigen::MatrixXd h = q.transpose() * z;
    h = 0.5 * (h + h.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    // Largest mu of K^{-1} first.
    const Eigen::VectorXd mu = es.eigenvalues().reverse();
    const Eigen::MatrixXd s = es.eigenvectors().rowwise().reverse();

    const Eigen::MatrixXd y = q * s;
    const Eigen::MatrixXd zy = z * s;
    worst = 0.0;
    for (Eigen::Index c = 0; c < want; ++c) {
      const double r = (zy.col(c) - mu(c) * y.col(c)).norm() / std::abs(mu(c));
      worst = std::max(worst, r);
    }
    if (worst <= opts.tol) {
      EigenResult res;
      res.values.resize(want);
      res.vectors.resize(n, want);
      for (Eigen::Index c = 0; c < want; ++c) {
        res.values(c) = 1.0 / mu(c);
        res.vectors.col(c) = y.col(c).normalized();
        fix_sign(res.vectors.col(c));
      }
      res.iterations = it;
      res.max_residual = worst;
      return res;
    }
    q = orthonormalize(zy);
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "subspace iteration did not converge in " + std::to_string(opts.max_iterations) +
                  " iterations (residual " + std::to_string(worst) + ")");
}

EigenResult smallest_eigenpairs_general(const SparseMatrix& a, std::size_t nev,
                                        const EigenOptions& opts) {
  check_request(a, nev);
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "sparse LU factorization failed: " + lu.lastErrorMessage());
  }
  using Cplx = std::complex<double>;
  const Eigen::Index n = a.rows();
  const auto p = static_cast<Eigen::Index>(block_size(nev, opts, n));
  const auto want = static_cast<Eigen::Index>(nev);
  Eigen::MatrixXd q = random_block(n, p, opts.seed);

  double worst = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd z = lu.solve(q);
    const Eigen::MatrixXd h = q.transpose() * z;
    Eigen::EigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::VectorXcd mu_all = es.eigenvalues();
    const Eigen::MatrixXcd s_all = es.eigenvectors();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
      if (mu_all(l).real() != mu_all(r).real()) return mu_all(l).real() > mu_all(r).real();
      return mu_all(l).imag() > mu_all(r).imag();
    });

    const Eigen::MatrixXcd qc = q.cast<Cplx>();
    const Eigen::MatrixXcd zc = z.cast<Cplx>();
    worst = 0.0;
    for (Eigen::Index c = 0; c < want; ++c) {
      const Eigen::Index idx = order[static_cast<std::size_t>(c)];
      const Eigen::VectorXcd y = qc * s_all.col(idx);
      const Eigen::VectorXcd r = zc * s_all.col(idx) - mu_all(idx) * y;
      worst = std::max(worst, r.norm() / (std::abs(mu_all(idx)) * y.norm()));
    }
    if (worst <= opts.tol) {
      EigenResult res;
      res.values.resize(want);
      res.vectors.resize(n, want);
      for (Eigen::Index c = 0; c < want; ++c) {
        const Eigen::Index idx = order[static_cast<std::size_t>(c)];
        const Cplx mu = mu_all(idx);
        const Eigen::VectorXcd y = qc * s_all.col(idx);
        res.values(c) = (1.0 / mu).real();
        const bool complex_pair = std::abs(mu.imag()) > 1e-14 * std::abs(mu);
        if (!complex_pair) {
          res.vectors.col(c) = y.real().normalized();
        } else if (mu.imag() > 0.0) {
          // First of the pair: real part. The partner column below gets the
          // orthogonalized imaginary part.
          Eigen::VectorXd re = y.real().normalized();
          res.vectors.col(c) = re;
          if (c + 1 < want) {
            Eigen::VectorXd im = y.imag();
            im -= re.dot(im) * re;
            res.vectors.col(c + 1) = im.normalized();
            res.values(c + 1) = (1.0 / mu).real();
            fix_sign(res.vectors.col(c));
            fix_sign(res.vectors.col(c + 1));
            ++c;
            continue;
          }
        } else {
          res.vectors.col(c) = y.imag().normalized();
        }
        fix_sign(res.vectors.col(c));
      }
      res.iterations = it;
      res.max_residual = worst;
      return res;
    }
    q = orthonormalize(z);
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "subspace iteration did not converge in " + std::to_string(opts.max_iterations) +
                  " iterations (residual " + std::to_string(worst) + ")");
}

}  // namespace invdom
