#include "invdom/interval.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "invdom/errors.hpp"

namespace invdom {

void IntervalProblem::validate() const {
  if (!(a < b)) throw Error(ErrorKind::InvalidInput, "interval requires a < b");
  if (c < 0.0) throw Error(ErrorKind::InvalidInput, "potential strength c must be >= 0");
  if (j_max == 0) throw Error(ErrorKind::InvalidInput, "j_max must be >= 1");
  if (c > 0.0 && a < 0.0 && b > 0.0) {
    throw Error(ErrorKind::SingularPotential, "c > 0 and 0 lies inside (a, b)");
  }
}

std::vector<Eigen1D> solve_interval(const IntervalProblem& p, std::size_t n_grid) {
  p.validate();
  if (n_grid < 64) throw Error(ErrorKind::InvalidInput, "n_grid must be >= 64");
  const lapack_int n = static_cast<lapack_int>(n_grid) - 1;  // interior unknowns
  if (static_cast<std::size_t>(n) < p.j_max) {
    throw Error(ErrorKind::InvalidInput, "grid too small for requested eigenpairs");
  }
  const double h = (p.b - p.a) / static_cast<double>(n_grid);
  const double inv_h2 = 1.0 / (h * h);

  std::vector<double> diag(n), off(n - 1, -inv_h2);
  for (lapack_int i = 0; i < n; ++i) {
    const double x = p.a + h * static_cast<double>(i + 1);
    diag[i] = 2.0 * inv_h2 + (p.c > 0.0 ? p.c / (x * x) : 0.0);
  }

  const lapack_int want = static_cast<lapack_int>(p.j_max);
  lapack_int found = 0;
  std::vector<double> w(n), z(static_cast<std::size_t>(n) * want);
  std::vector<lapack_int> ifail(n);
  const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(),
                                         0.0, 0.0, 1, want, 0.0, &found, w.data(), z.data(), n,
                                         ifail.data());
  if (info != 0 || found != want) {
    throw Error(ErrorKind::ConvergenceFailure,
                "tridiagonal eigensolver failed (info = " + std::to_string(info) + ")");
  }

  std::vector<Eigen1D> out;
  out.reserve(p.j_max);
  for (lapack_int k = 0; k < want; ++k) {
    Eigen1D e;
    e.j = static_cast<std::size_t>(k) + 1;
    e.lambda = w[k];
    e.u.assign(n_grid + 1, 0.0);
    double norm2 = 0.0;
    for (lapack_int i = 0; i < n; ++i) {
      const double v = z[static_cast<std::size_t>(k) * n + i];
      e.u[i + 1] = v;
      norm2 += v * v;
    }
    // Trapezoid rule; the endpoint values are zero.
    double scale = 1.0 / std::sqrt(norm2 * h);
    if (e.u[1] < 0.0) scale = -scale;
    for (auto& v : e.u) v *= scale;

    const auto& u = e.u;
    const std::size_t m = n_grid;
    e.dua = (-25.0 * u[0] + 48.0 * u[1] - 36.0 * u[2] + 16.0 * u[3] - 3.0 * u[4]) / (12.0 * h);
    e.dub = (25.0 * u[m] - 48.0 * u[m - 1] + 36.0 * u[m - 2] - 16.0 * u[m - 3] + 3.0 * u[m - 4]) /
            (12.0 * h);
    out.push_back(std::move(e));
  }
  return out;
}

std::pair<double, double> s_values_1d(const Eigen1D& e) {
  return {e.dua * e.dua / e.lambda, e.dub * e.dub / e.lambda};
}

double interval_identity_residual(const Eigen1D& e, const IntervalProblem& p) {
  const auto [ja, jb] = s_values_1d(e);
  return jb * p.b - ja * p.a - 2.0;
}

double recover_endpoint(double j_value, Endpoint which) {
  if (!(j_value > 0.0)) {
    throw Error(ErrorKind::NonpositiveData, "s-value must be positive, got " + std::to_string(j_value));
  }
  return which == Endpoint::Right ? 2.0 / j_value : -2.0 / j_value;
}

std::vector<IntervalSValues> solve_interval_extrapolated(const IntervalProblem& p,
                                                         std::size_t n_grid) {
  const auto coarse = solve_interval(p, n_grid);
  const auto fine = solve_interval(p, 2 * n_grid);
  std::vector<IntervalSValues> out;
  out.reserve(coarse.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const auto [ja_c, jb_c] = s_values_1d(coarse[k]);
    const auto [ja_f, jb_f] = s_values_1d(fine[k]);
    out.push_back({coarse[k].j, (4.0 * fine[k].lambda - coarse[k].lambda) / 3.0,
                   (4.0 * ja_f - ja_c) / 3.0, (4.0 * jb_f - jb_c) / 3.0});
  }
  return out;
}

}  // namespace invdom
