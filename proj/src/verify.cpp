#include "invdom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "invdom/errors.hpp"
#include "invdom/interval.hpp"
#include "invdom/membrane.hpp"
#include "invdom/plate.hpp"

namespace invdom {

namespace {

constexpr double kClusterTol = 1e-3;
constexpr double kShapeEps = 1e-3;

ReportRecord make(const std::string& id, const std::string& domain, std::size_t j, double computed,
                  double expected, double resolution, double tol) {
  const double r = computed - expected;
  return {id, domain, j, computed, expected, r, resolution, tol, std::abs(r) <= tol};
}

SupportFn random_body(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a0 = 1.0 + u(rng);
  std::vector<SupportFn::Mode> modes(4);
  modes[0] = {u(rng) - 0.5, u(rng) - 0.5};
  for (std::size_t k = 2; k <= 4; ++k) {
    const double kd = static_cast<double>(k);
    const double r = a0 * u(rng) / (3.0 * (kd * kd - 1.0));
    const double phase = kTwoPi * u(rng);
    modes[k - 1] = {r * std::cos(phase), r * std::sin(phase)};
  }
  return SupportFn(a0, modes);
}

SupportFn random_trig(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<SupportFn::Mode> modes(5);
  for (auto& m : modes) m = {u(rng), u(rng)};
  return SupportFn(u(rng), modes);
}

// Indices of eigenvalues within kClusterTol of eigs[k].
template <class Pair>
std::vector<std::size_t> cluster(const std::vector<Pair>& eigs, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (std::abs(eigs[i].lambda - eigs[k].lambda) <= kClusterTol * eigs[k].lambda) out.push_back(i);
  }
  return out;
}

void check_ids(const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    const auto& known = known_identities();
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw Error(ErrorKind::InvalidInput, "unknown identity '" + id + "'");
    }
  }
}

bool wants(const VerifyConfig& cfg, const char* id) {
  return std::find(cfg.identities.begin(), cfg.identities.end(), id) != cfg.identities.end();
}

}  // namespace

const std::vector<std::string>& known_identities() {
  static const std::vector<std::string> ids{"shape-derivative",  "boundary-eigenvalue", "basic-relation",
                                            "interval-identity", "interval-endpoint",   "additivity",
                                            "mixed-symmetry",    "plate-boundary-eigenvalue",
                                            "plate-relation"};
  return ids;
}

double tolerance_profile(const std::string& name) {
  if (name == "default") return 1.0;
  if (name == "strict") return 0.5;
  if (name == "loose") return 2.0;
  throw Error(ErrorKind::InvalidInput, "tolerance profile must be default, strict or loose");
}

std::vector<ReportRecord> run_verification(const VerifyConfig& cfg) {
  check_ids(cfg.identities);
  const double ts = cfg.tolerance_scale;
  const ConvexBody body(cfg.domain.support, cfg.domain.n_theta);
  const std::string& name = cfg.domain_name;
  std::vector<ReportRecord> out;

  if (wants(cfg, "additivity") || wants(cfg, "mixed-symmetry")) {
    std::mt19937_64 rng(cfg.seed);
    double worst_add = -1.0, worst_sym = -1.0;
    ReportRecord add_rec, sym_rec;
    for (int trial = 0; trial < 10; ++trial) {
      const ConvexBody other(random_body(rng), cfg.domain.n_theta);
      const SupportFn f = random_trig(rng);
      const auto fn = [&f](Direction d) { return f.value(d.theta()); };
      const double sum = boundary_integral_normal_fn(minkowski_sum(body, other), fn);
      const double parts = boundary_integral_normal_fn(body, fn) + boundary_integral_normal_fn(other, fn);
      const ReportRecord ra = make("additivity", name, 0, sum, parts, static_cast<double>(cfg.domain.n_theta),
                                   1e-10 * ts * std::max(1.0, std::abs(parts)));
      if (std::abs(ra.residual) > worst_add) {
        worst_add = std::abs(ra.residual);
        add_rec = ra;
      }
      const double m12 = mixed_support_integral(body, other);
      const double m21 = mixed_support_integral(other, body);
      const ReportRecord rs = make("mixed-symmetry", name, 0, m12, m21, static_cast<double>(cfg.domain.n_theta),
                                   1e-10 * ts * std::max(1.0, std::abs(m21)));
      if (std::abs(rs.residual) > worst_sym) {
        worst_sym = std::abs(rs.residual);
        sym_rec = rs;
      }
    }
    if (wants(cfg, "additivity")) out.push_back(add_rec);
    if (wants(cfg, "mixed-symmetry")) out.push_back(sym_rec);
  }

  if (wants(cfg, "interval-identity")) {
    const IntervalProblem p{cfg.a, cfg.b, cfg.c, cfg.j_max};
    for (const auto& s : solve_interval_extrapolated(p, cfg.n_grid)) {
      out.push_back(make("interval-identity", "interval", s.j, s.jb * p.b - s.ja * p.a, 2.0,
                         static_cast<double>(cfg.n_grid), 1e-3 * ts));
    }
  }
  if (wants(cfg, "interval-endpoint")) {
    const IntervalProblem p{0.0, cfg.b, cfg.c, cfg.j_max};
    for (const auto& s : solve_interval_extrapolated(p, cfg.n_grid)) {
      out.push_back(make("interval-endpoint", "interval", s.j, s.jb, 2.0 / p.b, static_cast<double>(cfg.n_grid),
                         1e-3 * ts * 2.0 / p.b));
    }
  }

  const bool membrane =
      wants(cfg, "shape-derivative") || wants(cfg, "boundary-eigenvalue") || wants(cfg, "basic-relation");
  const bool plate = wants(cfg, "plate-boundary-eigenvalue") || wants(cfg, "plate-relation");
  for (double spacing : cfg.resolutions) {
    if (membrane) {
      const PotentialSpec q{cfg.c};
      const auto eigs = solve_eigen(discretize(body, q, spacing), cfg.j_max);
      for (std::size_t k = 0; k < eigs.size(); ++k) {
        const auto& e = eigs[k];
        if (wants(cfg, "boundary-eigenvalue")) {
          std::vector<BoundaryTrace> basis;
          for (std::size_t i : cluster(eigs, k)) basis.push_back(eigs[i].trace);
          out.push_back(make("boundary-eigenvalue", name, e.j, eigenvalue_from_boundary_max(body, basis), e.lambda,
                             spacing, 0.02 * ts * e.lambda));
        }
        if (wants(cfg, "basic-relation")) {
          const double r = basic_relation_residual(body, s_function(e));
          out.push_back(make("basic-relation", name, e.j, r + 2.0, 2.0, spacing, 0.05 * ts));
        }
      }
      if (wants(cfg, "shape-derivative")) {
        const std::map<std::string, SupportFn> perturbations{
            {"dP=1", SupportFn(1.0, {})}, {"dP=cos2", SupportFn(0.0, {{0.0, 0.0}, {1.0, 0.0}})}};
        for (const auto& [label, dp] : perturbations) {
          const SupportFn hp = cfg.domain.support + dp * kShapeEps;
          const SupportFn hm = cfg.domain.support - dp * kShapeEps;
          if (convexity_check(hp, cfg.domain.n_theta) <= 0.0 ||
              convexity_check(hm, cfg.domain.n_theta) <= 0.0) {
            continue;
          }
          const auto ep = solve_eigen(discretize(ConvexBody(hp, cfg.domain.n_theta), q, spacing), cfg.j_max);
          const auto em = solve_eigen(discretize(ConvexBody(hm, cfg.domain.n_theta), q, spacing), cfg.j_max);
          for (std::size_t k = 0; k < eigs.size(); ++k) {
            if (multiple_eigenvalue(eigs, k + 1, kClusterTol)) continue;
            const double fd = (ep[k].lambda - em[k].lambda) / (2.0 * kShapeEps);
            const double an = shape_derivative(body, eigs[k].trace, dp);
            out.push_back(make("shape-derivative", name + ":" + label, k + 1, an, fd, spacing,
                               0.05 * ts * std::max(std::abs(fd), 0.01 * eigs[k].lambda)));
          }
        }
      }
    }
    if (plate) {
      const auto eigs = solve_clamped_plate(body, cfg.j_max, spacing);
      for (std::size_t k = 0; k < eigs.size(); ++k) {
        const auto& e = eigs[k];
        if (wants(cfg, "plate-boundary-eigenvalue")) {
          std::vector<BoundaryTrace> basis;
          for (std::size_t i : cluster(eigs, k)) basis.push_back(eigs[i].lap_trace);
          // 1/4 of the boundary integral is half of the membrane-form 1/2.
          out.push_back(make("plate-boundary-eigenvalue", name, e.j, 0.5 * eigenvalue_from_boundary_max(body, basis),
                             e.lambda, spacing, 0.03 * ts * e.lambda));
        }
        if (wants(cfg, "plate-relation")) {
          const double r = plate_identity_residual(body, plate_s_function(e));
          out.push_back(make("plate-relation", name, e.j, r + 4.0, 4.0, spacing, 0.1 * ts));
        }
      }
    }
  }
  return out;
}

}  // namespace invdom
