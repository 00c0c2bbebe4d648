#include "invdom/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "invdom/errors.hpp"

namespace invdom {

namespace {

// Basis index -> (order k, sine?).
std::pair<std::size_t, bool> index_mode(std::size_t i) {
  if (i == 0) return {0, false};
  return {(i + 1) / 2, i % 2 == 0};
}

double basis_value(std::size_t i, double theta) {
  const auto [k, sine] = index_mode(i);
  if (k == 0) return 1.0;
  const double kt = static_cast<double>(k) * theta;
  return sine ? std::sin(kt) : std::cos(kt);
}

// phi_i + phi_i''.
double basis_density(std::size_t i, double theta) {
  const auto [k, sine] = index_mode(i);
  const double kd = static_cast<double>(k);
  return (1.0 - kd * kd) * basis_value(i, theta);
}

void check_data(const BasisSpec& basis, const std::vector<SFunction>& data) {
  if (data.empty()) throw Error(ErrorKind::InvalidInput, "no s-function data");
  const auto grid = theta_grid(basis.n_theta());
  for (const auto& s : data) {
    if (s.sigma.size() != grid.size() || s.thetas.size() != grid.size()) {
      throw Error(ErrorKind::DataDirectionMismatch,
                  "s-function j=" + std::to_string(s.j) + " has " + std::to_string(s.sigma.size()) +
                      " samples; the basis quadrature has " + std::to_string(grid.size()));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(s.thetas[i] - grid[i]) > 1e-9) {
        throw Error(ErrorKind::DataDirectionMismatch,
                    "s-function j=" + std::to_string(s.j) + " is not on the uniform direction grid");
      }
    }
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

BasisSpec build_basis(std::size_t order, std::size_t n_theta, double margin) {
  if (margin < 0.0) throw Error(ErrorKind::InvalidInput, "basis margin must be >= 0");
  BasisSpec b;
  b.order = order;
  b.elements.reserve(2 * order + 1);
  b.elements.push_back({0, false, SupportFn(1.0, {}), ConvexBody(SupportFn::disk(1.0), n_theta),
                        ConvexBody(SupportFn::point({}), n_theta)});
  for (std::size_t k = 1; k <= order; ++k) {
    for (bool sine : {false, true}) {
      std::vector<SupportFn::Mode> modes(k);
      modes[k - 1] = sine ? SupportFn::Mode{0.0, 1.0} : SupportFn::Mode{1.0, 0.0};
      const SupportFn phi(0.0, modes);
      if (k == 1) {
        const Point e = sine ? Point{0.0, 1.0} : Point{1.0, 0.0};
        b.elements.push_back({k, sine, phi, ConvexBody(SupportFn::point(e), n_theta),
                              ConvexBody(SupportFn::point({}), n_theta)});
      } else {
        const double kd = static_cast<double>(k);
        const double m = kd * kd - 1.0 + margin;
        b.elements.push_back({k, sine, phi, ConvexBody(SupportFn(m, modes), n_theta),
                              ConvexBody(SupportFn::disk(m), n_theta)});
      }
    }
  }
  return b;
}

std::function<double(Point)> positive_homogeneous_extension(std::function<double(double)> f) {
  return [f = std::move(f)](Point x) {
    const double r = std::hypot(x.x, x.y);
    if (r == 0.0) return 0.0;
    return r * f(std::atan2(x.y, x.x));
  };
}

double rhs_value(RhsKind kind) noexcept { return kind == RhsKind::Plate ? 4.0 : 2.0; }

QuadraticSystem assemble_coefficients(const BasisSpec& basis, const std::vector<SFunction>& data,
                                      RhsKind kind) {
  check_data(basis, data);
  const std::size_t nb = basis.size();
  const auto grid = theta_grid(basis.n_theta());
  QuadraticSystem sys;
  sys.rhs = rhs_value(kind);
  std::vector<double> f(grid.size());
  for (const auto& s : data) {
    Eigen::MatrixXd a(nb, nb);
    for (std::size_t m = 0; m < nb; ++m) {
      for (std::size_t i = 0; i < grid.size(); ++i) f[i] = s.sigma[i] * basis_value(m, grid[i]);
      for (std::size_t k = 0; k < nb; ++k) {
        const auto& el = basis.elements[k];
        a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) =
            boundary_integral_normal_fn(el.g, f) - boundary_integral_normal_fn(el.h, f);
      }
    }
    sys.a.push_back(std::move(a));
  }
  return sys;
}

QuadraticSystem assemble_coefficients_direct(const BasisSpec& basis,
                                             const std::vector<SFunction>& data, RhsKind kind) {
  check_data(basis, data);
  const std::size_t nb = basis.size();
  const auto grid = theta_grid(basis.n_theta());
  const double w = kTwoPi / static_cast<double>(grid.size());
  QuadraticSystem sys;
  sys.rhs = rhs_value(kind);
  for (const auto& s : data) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nb, nb);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t k = 0; k < nb; ++k) {
        const double dk = s.sigma[i] * basis_density(k, grid[i]) * w;
        for (std::size_t m = 0; m < nb; ++m) {
          a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) +=
              dk * basis_value(m, grid[i]);
        }
      }
    }
    sys.a.push_back(std::move(a));
  }
  return sys;
}

std::vector<double> residual(const Eigen::VectorXd& alpha, const QuadraticSystem& sys) {
  std::vector<double> r;
  r.reserve(sys.a.size());
  for (const auto& a : sys.a) {
    if (a.rows() != alpha.size()) {
      throw Error(ErrorKind::InvalidInput, "alpha length does not match the basis");
    }
    r.push_back(alpha.dot(a * alpha) - sys.rhs);
  }
  return r;
}

SupportFn support_from_alpha(const Eigen::VectorXd& alpha) {
  if (alpha.size() % 2 == 0) {
    throw Error(ErrorKind::InvalidInput, "alpha must have odd length 2K + 1");
  }
  const auto order = static_cast<std::size_t>(alpha.size() / 2);
  std::vector<SupportFn::Mode> modes(order);
  for (std::size_t k = 1; k <= order; ++k) {
    modes[k - 1] = {alpha(static_cast<Eigen::Index>(2 * k - 1)),
                    alpha(static_cast<Eigen::Index>(2 * k))};
  }
  return SupportFn(alpha(0), modes);
}

Eigen::VectorXd default_initial_guess(const QuadraticSystem& sys) {
  if (sys.a.empty()) throw Error(ErrorKind::InvalidInput, "empty quadratic system");
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(sys.a.front().rows());
  const double a00 = sys.a.front()(0, 0);
  alpha(0) = a00 > 0.0 ? std::sqrt(sys.rhs / a00) : 1.0;
  return alpha;
}

std::vector<std::size_t> translation_modes(const QuadraticSystem& sys) {
  if (sys.a.empty() || sys.a.front().rows() < 3) return {};
  return {1, 2};
}

ReconstructionResult solve_quadratic_system(const QuadraticSystem& sys, const Eigen::VectorXd& init,
                                            const SolveOptions& opts) {
  if (sys.a.empty()) throw Error(ErrorKind::InvalidInput, "empty quadratic system");
  const Eigen::Index nb = sys.a.front().rows();
  if (init.size() != nb) throw Error(ErrorKind::InvalidInput, "initial alpha has wrong length");

  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < nb; ++i) {
    if (std::find(opts.fixed.begin(), opts.fixed.end(), static_cast<std::size_t>(i)) ==
        opts.fixed.end()) {
      free.push_back(i);
    }
  }
  const auto nf = static_cast<Eigen::Index>(free.size());
  const auto nj = static_cast<Eigen::Index>(sys.a.size());
  const auto ns = static_cast<Eigen::Index>(opts.penalty_samples);
  const double sq_mu = std::sqrt(opts.penalty_weight);
  const auto pgrid = theta_grid(opts.penalty_samples);

  std::vector<Eigen::MatrixXd> sym;
  for (const auto& a : sys.a) sym.push_back(0.5 * (a + a.transpose()));

  // Density rows: rho(theta_i) = sum_k alpha_k (phi_k + phi_k'')(theta_i).
  Eigen::MatrixXd dens(ns, nb);
  for (Eigen::Index i = 0; i < ns; ++i) {
    for (Eigen::Index k = 0; k < nb; ++k) {
      dens(i, k) = basis_density(static_cast<std::size_t>(k), pgrid[static_cast<std::size_t>(i)]);
    }
  }

  const auto evaluate = [&](const Eigen::VectorXd& alpha, Eigen::VectorXd& f, Eigen::MatrixXd* jac) {
    f.resize(nj + ns);
    if (jac) jac->setZero(nj + ns, nf);
    for (Eigen::Index j = 0; j < nj; ++j) {
      const Eigen::VectorXd g = sym[static_cast<std::size_t>(j)] * alpha;
      f(j) = alpha.dot(g) - sys.rhs;
      if (jac) {
        for (Eigen::Index c = 0; c < nf; ++c) (*jac)(j, c) = 2.0 * g(free[static_cast<std::size_t>(c)]);
      }
    }
    const Eigen::VectorXd rho = dens * alpha;
    for (Eigen::Index i = 0; i < ns; ++i) {
      const double viol = std::max(0.0, -rho(i));
      f(nj + i) = sq_mu * viol;
      if (jac && viol > 0.0) {
        for (Eigen::Index c = 0; c < nf; ++c) {
          (*jac)(nj + i, c) = -sq_mu * dens(i, free[static_cast<std::size_t>(c)]);
        }
      }
    }
    return f.squaredNorm();
  };

  Eigen::VectorXd alpha = init;
  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  double cost = evaluate(alpha, f, &jac);
  double damping = -1.0;
  std::size_t it = 0;
  for (; it < opts.max_iterations && nf > 0; ++it) {
    const Eigen::VectorXd grad = jac.transpose() * f;
    if (grad.cwiseAbs().maxCoeff() <= opts.gradient_tol) break;
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const double dmax = normal.diagonal().maxCoeff();
    Eigen::VectorXd diag = normal.diagonal().cwiseMax(1e-12 * std::max(dmax, 1e-300));
    if (damping < 0.0) damping = 1e-3;

    bool accepted = false;
    bool small_gain = false;
    Eigen::VectorXd step;
    while (damping < 1e20) {
      Eigen::MatrixXd lhs = normal;
      lhs.diagonal() += damping * diag;
      step = lhs.ldlt().solve(-grad);
      Eigen::VectorXd trial = alpha;
      for (Eigen::Index c = 0; c < nf; ++c) trial(free[static_cast<std::size_t>(c)]) += step(c);
      Eigen::VectorXd ft;
      const double ct = evaluate(trial, ft, nullptr);
      if (ct < cost) {
        small_gain = cost - ct <= opts.cost_tol * cost;
        alpha = trial;
        cost = evaluate(alpha, f, &jac);
        damping = std::max(damping / 3.0, 1e-15);
        accepted = true;
        break;
      }
      damping *= 4.0;
    }
    if (!accepted) {
      if (grad.cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, cost)) break;
      throw Error(ErrorKind::NoDescent,
                  "damped Gauss-Newton found no descent direction (gradient " +
                      std::to_string(grad.cwiseAbs().maxCoeff()) + ")");
    }
    if (small_gain || step.norm() <= opts.step_tol * (alpha.norm() + opts.step_tol)) {
      ++it;
      break;
    }
  }

  ReconstructionResult res;
  res.alpha = alpha;
  res.support = support_from_alpha(alpha);
  res.residuals = residual(alpha, sys);
  res.convexity_margin = convexity_check(res.support, kDefaultNTheta);
  res.non_convex = res.convexity_margin < -opts.eps_conv;
  res.iterations = it;
  res.objective = cost;
  res.fixed = opts.fixed;
  if (nf > 0) {
    res.singular_values = Eigen::JacobiSVD<Eigen::MatrixXd>(jac.topRows(nj)).singularValues();
  }
  return res;
}

std::vector<ReconstructionResult> solve_multistart(const QuadraticSystem& sys,
                                                   const SolveOptions& opts,
                                                   const MultiStartOptions& ms) {
  const Eigen::VectorXd base = default_initial_guess(sys);
  const double tol = ms.residual_tol >= 0.0 ? ms.residual_tol : 0.025 * sys.rhs;
  std::vector<ReconstructionResult> found;
  for (std::size_t s = 0; s < std::max<std::size_t>(ms.starts, 1); ++s) {
    Eigen::VectorXd init = base;
    if (s > 0) {
      std::mt19937_64 rng(ms.seed + s);
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      init(0) = base(0) * (1.0 + ms.perturbation * u(rng));
      for (Eigen::Index i = 1; i < init.size(); ++i) {
        const double r = u(rng);
        if (std::find(opts.fixed.begin(), opts.fixed.end(), static_cast<std::size_t>(i)) !=
            opts.fixed.end()) {
          continue;
        }
        const double k = static_cast<double>(index_mode(static_cast<std::size_t>(i)).first);
        init(i) = base(0) * ms.perturbation * r / (k * k);
      }
    }
    ReconstructionResult r;
    try {
      r = solve_quadratic_system(sys, init, opts);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoDescent) continue;
      throw;
    }
    if (r.non_convex || max_abs(r.residuals) > tol) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& o) {
      return (o.alpha - r.alpha).cwiseAbs().maxCoeff() <=
             ms.distinct_tol * (1.0 + r.alpha.cwiseAbs().maxCoeff());
    });
    if (!duplicate) found.push_back(std::move(r));
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.objective < b.objective;
  });
  return found;
}

Reconstruction reconstruct_domain(const ReconstructionResult& result, bool project,
                                  double eps_conv, std::size_t n_theta) {
  const SupportFn& h = result.support;
  const double margin = convexity_check(h, n_theta);
  if (margin >= -eps_conv) return {ConvexBody(h, n_theta), false};
  if (!project) {
    throw Error(ErrorKind::NonConvexSupport,
                "min of h + h'' is " + std::to_string(margin) + "; the support is not convex");
  }
  const std::size_t order = h.order();
  const std::size_t m = std::max(n_theta, 8 * (order + 1));
  const auto grid = theta_grid(m);
  std::vector<double> rho(m);
  for (std::size_t i = 0; i < m; ++i) rho[i] = std::max(0.0, h.curvature_radius(grid[i]));
  double c0 = 0.0;
  for (double r : rho) c0 += r;
  c0 /= static_cast<double>(m);
  std::vector<SupportFn::Mode> modes(order);
  if (order >= 1) modes[0] = h.mode(1);
  for (std::size_t k = 2; k <= order; ++k) {
    double ck = 0.0;
    double dk = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      ck += rho[i] * std::cos(static_cast<double>(k) * grid[i]);
      dk += rho[i] * std::sin(static_cast<double>(k) * grid[i]);
    }
    const double kd = static_cast<double>(k);
    const double fejer = 1.0 - kd / static_cast<double>(order + 1);
    const double scale = 2.0 / static_cast<double>(m) * fejer / (1.0 - kd * kd);
    modes[k - 1] = {ck * scale, dk * scale};
  }
  SupportFn out(c0, modes);
  // Dropping the first moment can leave a small negative dip; a disk covers it.
  const double low = convexity_check(out, n_theta);
  if (low < 0.0) out = out + SupportFn::disk(-low);
  return {ConvexBody(out, n_theta), true};
}

Decomposition decompose_support(const SupportFn& h, const BasisSpec& basis) {
  Decomposition d;
  d.alpha = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  d.alpha(0) = h.a0();
  for (std::size_t k = 1; k <= h.order(); ++k) {
    const auto md = h.mode(k);
    if (k <= basis.order) {
      d.alpha(static_cast<Eigen::Index>(2 * k - 1)) = md.a;
      d.alpha(static_cast<Eigen::Index>(2 * k)) = md.b;
    } else if (md.a != 0.0 || md.b != 0.0) {
      d.truncated = true;
    }
  }
  return d;
}

double index_split_residual(const Eigen::VectorXd& alpha, const BasisSpec& basis,
                            const SFunction& data, double rhs) {
  check_data(basis, {data});
  if (alpha.size() != static_cast<Eigen::Index>(basis.size())) {
    throw Error(ErrorKind::InvalidInput, "alpha length does not match the basis");
  }
  SupportFn left(0.0, {});
  SupportFn right(0.0, {});
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double a = alpha(static_cast<Eigen::Index>(k));
    const auto& el = basis.elements[k];
    if (a > 0.0) {
      left = left + el.g.support() * a;
      right = right + el.h.support() * a;
    } else if (a < 0.0) {
      left = left + el.h.support() * (-a);
      right = right + el.g.support() * (-a);
    }
  }
  const SupportFn p = support_from_alpha(alpha);
  const auto grid = theta_grid(basis.n_theta());
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = data.sigma[i] * p.value(grid[i]);
  const ConvexBody l(left, basis.n_theta());
  const ConvexBody r(right, basis.n_theta());
  return boundary_integral_normal_fn(l, f) - boundary_integral_normal_fn(r, f) - rhs;
}

}  // namespace invdom
