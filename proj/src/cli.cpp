#include "invdom/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "invdom/errors.hpp"
#include "invdom/interval.hpp"
#include "invdom/inverse.hpp"
#include "invdom/io.hpp"
#include "invdom/membrane.hpp"
#include "invdom/plate.hpp"
#include "invdom/verify.hpp"

namespace invdom {

namespace {

enum Exit : int { kOk = 0, kBreach = 1, kBadInput = 2, kSolverFailure = 3, kNoSolution = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::NoDescent:
      return kSolverFailure;
    default:
      return kBadInput;
  }
}

struct ForwardArgs {
  std::string domain, op = "membrane", out;
  double c = 0.0, spacing = 0.01;
  std::size_t j_max = 4, n_theta = 0;
};

struct VerifyArgs {
  std::string domain, out, profile = "default";
  std::vector<std::string> identities;
  std::vector<double> resolutions{0.02, 0.01};
  std::vector<double> interval{1.0, 2.0};
  double c = 0.0;
  std::size_t j_max = 3, n_grid = 2000;
  std::uint64_t seed = 1;
};

struct InvertArgs {
  std::string sigma, out, polyline;
  std::size_t order = 2, starts = 8;
  double rhs = 0.0, residual_tol = -1.0;
  std::uint64_t seed = 1;
};

struct ConvertArgs {
  std::string samples, out, extension = "none", op = "membrane";
  std::size_t n_theta = kDefaultNTheta;
  double c = 0.0;
};

struct SweepArgs {
  std::string out;
  double a = 0.0;
  std::vector<double> b_values{1.0, 2.0}, c_values{0.0, 1.0, 2.0};
  std::size_t j_max = 5, n_grid = 2000;
};

DomainSpec load_domain(const std::string& path) { return parse_domain_spec(read_text_file(path)); }

int cmd_forward(const ForwardArgs& a, std::ostream& out) {
  if (a.op != "membrane" && a.op != "plate") {
    throw Error(ErrorKind::InvalidInput, "--operator must be membrane or plate");
  }
  if (a.op == "plate" && a.c != 0.0) throw Error(ErrorKind::InvalidInput, "the plate operator has no potential");
  DomainSpec spec = load_domain(a.domain);
  if (a.n_theta != 0) spec.n_theta = a.n_theta;
  const ConvexBody body(spec.support, spec.n_theta);
  SigmaTable t;
  t.op = a.op;
  t.c = a.c;
  t.n_theta = spec.n_theta;
  if (a.op == "membrane") {
    for (const auto& e : solve_eigen(discretize(body, PotentialSpec{a.c}, a.spacing), a.j_max)) {
      t.lambdas.push_back(e.lambda);
      t.data.push_back(s_function(e));
    }
  } else {
    for (const auto& e : solve_clamped_plate(body, a.j_max, a.spacing)) {
      t.lambdas.push_back(e.lambda);
      t.data.push_back(plate_s_function(e));
    }
  }
  write_text_file_atomic(a.out, format_sigma_table(t));
  out << "wrote " << t.data.size() << " s-functions to " << a.out << "\n";
  return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyConfig cfg;
  if (!a.domain.empty()) {
    cfg.domain = load_domain(a.domain);
    cfg.domain_name = a.domain;
  } else {
    cfg.domain.support = SupportFn::disk(1.0);
    cfg.domain_name = "unit-disk";
  }
  cfg.identities = a.identities.empty() ? known_identities() : a.identities;
  cfg.resolutions = a.resolutions;
  if (a.interval.size() != 2) throw Error(ErrorKind::InvalidInput, "--interval takes a,b");
  cfg.a = a.interval[0];
  cfg.b = a.interval[1];
  cfg.c = a.c;
  cfg.j_max = a.j_max;
  cfg.n_grid = a.n_grid;
  cfg.seed = a.seed;
  cfg.tolerance_scale = tolerance_profile(a.profile);
  const auto records = run_verification(cfg);
  write_text_file_atomic(a.out, format_report(records));
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.pass ? 0 : 1;
  out << records.size() << " checks, " << failed << " outside tolerance; report in " << a.out << "\n";
  return failed == 0 ? kOk : kBreach;
}

int cmd_invert(const InvertArgs& a, std::ostream& out) {
  const SigmaTable t = parse_sigma_table(read_text_file(a.sigma));
  const RhsKind kind = t.op == "plate" ? RhsKind::Plate : RhsKind::Membrane;
  if (a.rhs != 0.0 && a.rhs != rhs_value(kind)) {
    throw Error(ErrorKind::InvalidInput, "--rhs " + std::to_string(a.rhs) + " does not match a " + t.op +
                                             " table (rhs " + std::to_string(rhs_value(kind)) + ")");
  }
  const BasisSpec basis = build_basis(a.order, t.n_theta);
  const QuadraticSystem sys = assemble_coefficients(basis, t.data, kind);
  SolveOptions so;
  if (kind == RhsKind::Plate || t.c == 0.0) so.fixed = translation_modes(sys);
  MultiStartOptions ms;
  ms.starts = a.starts;
  ms.seed = a.seed;
  ms.residual_tol = a.residual_tol;
  const auto sols = solve_multistart(sys, so, ms);
  write_text_file_atomic(a.out, format_solutions_json(sols, a.order, sys.rhs, a.starts, a.seed));
  const std::string poly = a.polyline.empty() ? a.out + ".polyline.tsv" : a.polyline;
  write_text_file_atomic(poly, format_polylines(sols, 360));
  if (sols.empty()) {
    out << "no convex solution within the residual tolerance\n";
    return kNoSolution;
  }
  out << sols.size() << " solution(s); best alpha_0 = " << sols.front().alpha(0) << "; written to "
      << a.out << "\n";
  return kOk;
}

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  if (a.op != "membrane" && a.op != "plate") {
    throw Error(ErrorKind::InvalidInput, "--operator must be membrane or plate");
  }
  SigmaTable t = convert_pointwise_to_directional(parse_locus_samples(read_text_file(a.samples)),
                                                  a.n_theta, parse_extension_mode(a.extension));
  t.op = a.op;
  t.c = a.c;
  write_text_file_atomic(a.out, format_sigma_table(t));
  out << "wrote " << t.data.size() << " s-functions to " << a.out << "\n";
  return kOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  std::ostringstream os;
  os << "a\tb\tc\tj\tlambda\tJa\tJb\tidentity_residual\trecovered_b\n";
  for (double b : a.b_values) {
    for (double c : a.c_values) {
      const IntervalProblem p{a.a, b, c, a.j_max};
      for (const auto& s : solve_interval_extrapolated(p, a.n_grid)) {
        char buf[256];
        const double rec = a.a == 0.0 ? recover_endpoint(s.jb, Endpoint::Right) : NAN;
        std::snprintf(buf, sizeof buf, "%.17g\t%.17g\t%.17g\t%zu\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n",
                      p.a, p.b, p.c, s.j, s.lambda, s.ja, s.jb, s.jb * p.b - s.ja * p.a - 2.0, rec);
        os << buf;
      }
    }
  }
  write_text_file_atomic(a.out, os.str());
  out << "wrote sweep to " << a.out << "\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundary eigen-data of convex domains: forward solves, identity checks, reconstruction"};
  app.require_subcommand(1);

  ForwardArgs fa;
  auto* fwd = app.add_subcommand("forward", "compute s-functions of a domain");
  fwd->add_option("--domain", fa.domain, "domain spec (JSON)")->required();
  fwd->add_option("--operator", fa.op, "membrane or plate");
  fwd->add_option("--c", fa.c, "potential strength, q = c/|x|^2");
  fwd->add_option("--jmax", fa.j_max, "number of eigenpairs");
  fwd->add_option("--spacing", fa.spacing, "grid spacing");
  fwd->add_option("--ntheta", fa.n_theta, "direction samples (overrides the spec)");
  fwd->add_option("--out", fa.out, "sigma table to write")->required();

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "check boundary identities");
  ver->add_option("--domain", va.domain, "domain spec (JSON); unit disk if omitted");
  ver->add_option("--identities", va.identities, "comma-separated ids")->delimiter(',');
  ver->add_option("--resolutions", va.resolutions, "comma-separated grid spacings")->delimiter(',');
  ver->add_option("--interval", va.interval, "a,b for the interval checks")->delimiter(',');
  ver->add_option("--c", va.c, "potential strength");
  ver->add_option("--jmax", va.j_max, "eigenpairs per check");
  ver->add_option("--ngrid", va.n_grid, "interval grid before extrapolation");
  ver->add_option("--seed", va.seed, "seed for random bodies");
  ver->add_option("--tolerance-profile", va.profile, "default, strict or loose");
  ver->add_option("--out", va.out, "report to write")->required();

  InvertArgs ia;
  auto* inv = app.add_subcommand("invert", "reconstruct a support function from s-functions");
  inv->add_option("--sigma", ia.sigma, "sigma table")->required();
  inv->add_option("--basis-order", ia.order, "highest angular order K");
  inv->add_option("--rhs", ia.rhs, "2 (membrane) or 4 (plate); defaults to the table operator");
  inv->add_option("--starts", ia.starts, "number of starts");
  inv->add_option("--seed", ia.seed, "seed for perturbed starts");
  inv->add_option("--residual-tol", ia.residual_tol, "max |r_j| accepted");
  inv->add_option("--out", ia.out, "solutions (JSON)")->required();
  inv->add_option("--polyline", ia.polyline, "boundary polylines (default <out>.polyline.tsv)");

  ConvertArgs ca;
  auto* conv = app.add_subcommand("convert", "point-sampled s-functions to a sigma table");
  conv->add_option("--samples", ca.samples, "locus samples: x y s_1 ... s_J")->required();
  conv->add_option("--ntheta", ca.n_theta, "direction samples");
  conv->add_option("--extension", ca.extension, "none, degree-2 or constant-ray");
  conv->add_option("--operator", ca.op, "membrane or plate");
  conv->add_option("--c", ca.c, "potential strength recorded in the table");
  conv->add_option("--out", ca.out, "sigma table to write")->required();

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep-1d", "interval problem batch");
  sw->add_option("--a", sa.a, "left endpoint");
  sw->add_option("--b-values", sa.b_values, "comma-separated right endpoints")->delimiter(',');
  sw->add_option("--c-values", sa.c_values, "comma-separated potential strengths")->delimiter(',');
  sw->add_option("--jmax", sa.j_max, "eigenpairs");
  sw->add_option("--ngrid", sa.n_grid, "grid before extrapolation");
  sw->add_option("--out", sa.out, "table to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kBadInput;
  }

  try {
    if (*fwd) return cmd_forward(fa, out);
    if (*ver) return cmd_verify(va, out);
    if (*inv) return cmd_invert(ia, out);
    if (*conv) return cmd_convert(ca, out);
    if (*sw) return cmd_sweep(sa, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace invdom
