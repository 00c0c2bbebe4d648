#include "invdom/io.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "invdom/errors.hpp"
#include "json.hpp"
#include "trace_util.hpp"

namespace invdom {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double field_number(const json& j, const char* name, const std::string& where) {
  if (!j.contains(name)) throw Error(ErrorKind::InvalidInput, "missing field '" + where + name + "'");
  const auto& v = j.at(name);
  if (!v.is_number()) {
    throw Error(ErrorKind::InvalidInput, "field '" + where + name + "' must be a number");
  }
  return v.get<double>();
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "cannot parse " + what + " from '" + s + "'");
  }
}

json support_json(const SupportFn& h) {
  json modes = json::array();
  for (std::size_t k = 1; k <= h.order(); ++k) {
    const auto m = h.mode(k);
    modes.push_back({{"k", k}, {"a", m.a}, {"b", m.b}});
  }
  return {{"a0", h.a0()}, {"modes", modes}};
}

}  // namespace

DomainSpec parse_domain_spec(const std::string& text, double eps_conv) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("domain spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "domain spec must be a JSON object");
  DomainSpec spec;
  const double a0 = field_number(j, "a0", "");
  std::vector<SupportFn::Mode> modes;
  if (j.contains("modes")) {
    if (!j.at("modes").is_array()) throw Error(ErrorKind::InvalidInput, "field 'modes' must be an array");
    std::size_t idx = 0;
    for (const auto& m : j.at("modes")) {
      const std::string where = "modes[" + std::to_string(idx++) + "].";
      if (!m.is_object()) throw Error(ErrorKind::InvalidInput, "entry '" + where + "' must be an object");
      const double kd = field_number(m, "k", where);
      if (kd < 1.0 || kd != std::floor(kd) || kd > 4096.0) {
        throw Error(ErrorKind::InvalidInput, "field '" + where + "k' must be an integer >= 1");
      }
      const auto k = static_cast<std::size_t>(kd);
      if (modes.size() < k) modes.resize(k);
      modes[k - 1].a += m.contains("a") ? field_number(m, "a", where) : 0.0;
      modes[k - 1].b += m.contains("b") ? field_number(m, "b", where) : 0.0;
    }
  }
  if (j.contains("ntheta")) {
    const double n = field_number(j, "ntheta", "");
    if (n < 8.0 || n != std::floor(n)) {
      throw Error(ErrorKind::InvalidInput, "field 'ntheta' must be an integer >= 8");
    }
    spec.n_theta = static_cast<std::size_t>(n);
  }
  spec.support = SupportFn(a0, modes);
  const double margin = convexity_check(spec.support, std::max<std::size_t>(spec.n_theta, 2048));
  if (margin < -eps_conv) {
    throw Error(ErrorKind::ConvexityViolation,
                "min of h + h'' is " + num(margin) + "; not the support function of a convex body");
  }
  return spec;
}

std::string format_domain_spec(const DomainSpec& spec) {
  json j = support_json(spec.support);
  j["ntheta"] = spec.n_theta;
  return j.dump(2) + "\n";
}

std::string format_sigma_table(const SigmaTable& t) {
  std::ostringstream os;
  os << "# operator: " << t.op << "\n";
  os << "# potential_c: " << num(t.c) << "\n";
  os << "# normalization: unit-L2\n";
  os << "# indexing: normal-direction\n";
  os << "# ntheta: " << t.n_theta << "\n";
  os << "# extension: " << t.extension << "\n";
  if (!t.lambdas.empty()) {
    os << "# lambdas:";
    for (double l : t.lambdas) os << " " << num(l);
    os << "\n";
  }
  os << "# columns: j theta sigma\n";
  for (const auto& s : t.data) {
    for (std::size_t i = 0; i < s.sigma.size(); ++i) {
      os << s.j << "\t" << num(s.thetas[i]) << "\t" << num(s.sigma[i]) << "\n";
    }
  }
  return os.str();
}

SigmaTable parse_sigma_table(const std::string& text) {
  SigmaTable t;
  std::map<std::string, std::string> meta;
  std::map<std::size_t, std::vector<std::pair<double, double>>> rows;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s[0] == '#') {
      const auto colon = s.find(':');
      if (colon != std::string::npos) meta[trim(s.substr(1, colon - 1))] = trim(s.substr(colon + 1));
      continue;
    }
    std::istringstream ls(s);
    std::string js, ts, vs, extra;
    if (!(ls >> js >> ts >> vs) || (ls >> extra)) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected 'j theta sigma'");
    }
    const double jd = parse_double(js, "j on line " + std::to_string(lineno));
    if (jd < 1.0 || jd != std::floor(jd)) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": j must be a positive integer");
    }
    const double sigma = parse_double(vs, "sigma on line " + std::to_string(lineno));
    if (!(sigma >= 0.0)) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": sigma must be >= 0");
    }
    rows[static_cast<std::size_t>(jd)].emplace_back(
        parse_double(ts, "theta on line " + std::to_string(lineno)), sigma);
  }
  for (const char* key : {"operator", "ntheta"}) {
    if (!meta.count(key)) throw Error(ErrorKind::InvalidInput, std::string("missing metadata '") + key + "'");
  }
  t.op = meta["operator"];
  if (t.op != "membrane" && t.op != "plate") {
    throw Error(ErrorKind::InvalidInput, "metadata 'operator' must be membrane or plate");
  }
  if (meta.count("potential_c")) t.c = parse_double(meta["potential_c"], "potential_c");
  if (meta.count("normalization") && meta["normalization"] != "unit-L2") {
    throw Error(ErrorKind::InvalidInput, "metadata 'normalization' must be unit-L2");
  }
  if (meta.count("indexing") && meta["indexing"] != "normal-direction") {
    throw Error(ErrorKind::InvalidInput, "metadata 'indexing' must be normal-direction");
  }
  if (meta.count("extension")) t.extension = meta["extension"];
  const double nd = parse_double(meta["ntheta"], "ntheta");
  if (nd < 8.0 || nd != std::floor(nd)) throw Error(ErrorKind::InvalidInput, "ntheta must be an integer >= 8");
  t.n_theta = static_cast<std::size_t>(nd);
  if (meta.count("lambdas")) {
    std::istringstream ls(meta["lambdas"]);
    std::string tok;
    while (ls >> tok) t.lambdas.push_back(parse_double(tok, "lambdas"));
  }
  if (rows.empty()) throw Error(ErrorKind::InvalidInput, "sigma table has no rows");
  const auto grid = theta_grid(t.n_theta);
  const double dt = kTwoPi / static_cast<double>(t.n_theta);
  for (auto& [j, pts] : rows) {
    SFunction s;
    s.j = j;
    s.thetas = grid;
    s.sigma.assign(t.n_theta, 0.0);
    std::vector<bool> seen(t.n_theta, false);
    for (const auto& [theta, sigma] : pts) {
      const double pos = theta / dt;
      const long idx = std::lround(pos);
      if (idx < 0 || idx >= static_cast<long>(t.n_theta) || std::abs(pos - static_cast<double>(idx)) > 1e-6) {
        throw Error(ErrorKind::InvalidInput,
                    "j=" + std::to_string(j) + ": theta " + num(theta) + " is not on the uniform grid");
      }
      if (seen[static_cast<std::size_t>(idx)]) {
        throw Error(ErrorKind::InvalidInput, "j=" + std::to_string(j) + ": duplicate theta " + num(theta));
      }
      seen[static_cast<std::size_t>(idx)] = true;
      s.sigma[static_cast<std::size_t>(idx)] = sigma;
    }
    if (pts.size() != t.n_theta) {
      throw Error(ErrorKind::InvalidInput, "j=" + std::to_string(j) + ": direction grid incomplete (" +
                                               std::to_string(pts.size()) + " of " +
                                               std::to_string(t.n_theta) + ")");
    }
    t.data.push_back(std::move(s));
  }
  return t;
}

std::string format_report(const std::vector<ReportRecord>& records) {
  std::ostringstream os;
  os << "identity\tdomain\tj\tcomputed\texpected\tresidual\tresolution\ttolerance\tpass\n";
  for (const auto& r : records) {
    os << r.identity << "\t" << r.domain << "\t" << r.j << "\t" << num(r.computed) << "\t"
       << num(r.expected) << "\t" << num(r.residual) << "\t" << num(r.resolution) << "\t"
       << num(r.tolerance) << "\t" << (r.pass ? "1" : "0") << "\n";
  }
  return os.str();
}

std::string format_solutions_json(const std::vector<ReconstructionResult>& sols,
                                  std::size_t basis_order, double rhs, std::size_t starts,
                                  std::uint64_t seed) {
  json out;
  out["basis_order"] = basis_order;
  out["rhs"] = rhs;
  out["starts"] = starts;
  out["seed"] = seed;
  json arr = json::array();
  std::size_t rank = 1;
  for (const auto& s : sols) {
    json e;
    e["rank"] = rank++;
    e["alpha"] = std::vector<double>(s.alpha.data(), s.alpha.data() + s.alpha.size());
    e["support"] = support_json(s.support);
    e["residuals"] = s.residuals;
    e["convexity_margin"] = s.convexity_margin;
    e["non_convex"] = s.non_convex;
    e["singular_values"] =
        std::vector<double>(s.singular_values.data(), s.singular_values.data() + s.singular_values.size());
    e["iterations"] = s.iterations;
    e["objective"] = s.objective;
    e["fixed"] = s.fixed;
    arr.push_back(std::move(e));
  }
  out["solutions"] = std::move(arr);
  return out.dump(2) + "\n";
}

std::string format_polylines(const std::vector<ReconstructionResult>& sols, std::size_t points) {
  std::ostringstream os;
  os << "# columns: solution theta x y\n";
  const auto grid = theta_grid(points);
  for (std::size_t k = 0; k < sols.size(); ++k) {
    const SupportFn& h = sols[k].support;
    for (double t : grid) {
      const double v = h.value(t);
      const double d = h.d1(t);
      os << k + 1 << "\t" << num(t) << "\t" << num(v * std::cos(t) - d * std::sin(t)) << "\t"
         << num(v * std::sin(t) + d * std::cos(t)) << "\n";
    }
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidInput, "write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::InvalidInput, "cannot rename onto '" + path + "': " + ec.message());
  }
}

std::string to_string(ExtensionMode m) {
  switch (m) {
    case ExtensionMode::None: return "none";
    case ExtensionMode::DegreeMinus2: return "degree-2";
    case ExtensionMode::ConstantRay: return "constant-ray";
  }
  return "none";
}

ExtensionMode parse_extension_mode(const std::string& s) {
  if (s == "none") return ExtensionMode::None;
  if (s == "degree-2") return ExtensionMode::DegreeMinus2;
  if (s == "constant-ray") return ExtensionMode::ConstantRay;
  throw Error(ErrorKind::InvalidInput, "extension mode must be none, degree-2 or constant-ray");
}

SigmaTable convert_pointwise_to_directional(const std::vector<LocusSample>& samples,
                                            std::size_t n_theta, ExtensionMode mode) {
  const std::size_t n = samples.size();
  if (n < 3) throw Error(ErrorKind::InvalidInput, "locus needs at least 3 samples");
  const std::size_t nj = samples.front().values.size();
  if (nj == 0) throw Error(ErrorKind::InvalidInput, "locus samples carry no s-values");
  for (const auto& s : samples) {
    if (s.values.size() != nj) throw Error(ErrorKind::InvalidInput, "ragged s-value columns");
  }
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = samples[i].x;
    const Point& b = samples[(i + 1) % n].x;
    area2 += a.x * b.y - a.y * b.x;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = area2 >= 0.0 ? i : n - 1 - i;
  const auto pt = [&](std::size_t i) { return samples[order[i % n]].x; };

  std::vector<double> normal(n);
  double turn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point p0 = pt(i + n - 1);
    const Point p1 = pt(i);
    const Point p2 = pt(i + 1);
    const double ex = p1.x - p0.x, ey = p1.y - p0.y;
    const double fx = p2.x - p1.x, fy = p2.y - p1.y;
    const double cross = ex * fy - ey * fx;
    if (!(cross > 1e-12 * std::hypot(ex, ey) * std::hypot(fx, fy))) {
      throw Error(ErrorKind::NonMonotoneNormals,
                  "locus is not strictly convex near sample " + std::to_string(order[i]));
    }
    const double tx = p2.x - p0.x, ty = p2.y - p0.y;
    normal[i] = std::atan2(-tx, ty);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::remainder(normal[(i + 1) % n] - normal[i], kTwoPi);
    if (!(d > 0.0)) {
      throw Error(ErrorKind::NonMonotoneNormals,
                  "outward normals do not turn monotonically at sample " + std::to_string(order[i]));
    }
    turn += d;
  }
  if (std::abs(turn - kTwoPi) > 1e-6) {
    throw Error(ErrorKind::NonMonotoneNormals, "outward normals do not turn exactly once");
  }

  SigmaTable t;
  t.op = "membrane";
  t.n_theta = n_theta;
  t.extension = to_string(mode);
  for (std::size_t j = 0; j < nj; ++j) {
    std::vector<detail::TraceSample> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {normal[i], samples[order[i]].values[j]};
    SFunction s;
    s.j = j + 1;
    s.thetas = theta_grid(n_theta);
    s.sigma = detail::resample_periodic(std::move(pts), n_theta);
    t.data.push_back(std::move(s));
  }
  return t;
}

std::vector<LocusSample> parse_locus_samples(const std::string& text) {
  std::vector<LocusSample> out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string s = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::vector<double> vals;
    std::string tok;
    while (ls >> tok) vals.push_back(parse_double(tok, "value on line " + std::to_string(lineno)));
    if (vals.size() < 3) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected 'x y s_1 ...'");
    }
    out.push_back({{vals[0], vals[1]}, std::vector<double>(vals.begin() + 2, vals.end())});
  }
  return out;
}

}  // namespace invdom
