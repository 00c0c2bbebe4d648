#pragma once

// File formats: domain specs (JSON), sigma tables and reports (tab-separated
// text with `# key: value` headers).

#include <cstddef>
#include <string>
#include <vector>

#include "invdom/inverse.hpp"
#include "invdom/sfunction.hpp"
#include "invdom/support.hpp"

namespace invdom {

struct DomainSpec {
  SupportFn support;
  std::size_t n_theta = kDefaultNTheta;
};

/// {"a0": 1.0, "modes": [{"k": 2, "a": 0.2, "b": 0.0}], "ntheta": 512}.
/// Throws InvalidInput naming the offending field, ConvexityViolation when
/// h + h'' < -eps_conv.
DomainSpec parse_domain_spec(const std::string& text, double eps_conv = kDefaultConvexityTol);
std::string format_domain_spec(const DomainSpec& spec);

struct SigmaTable {
  std::string op = "membrane";  // membrane | plate
  double c = 0.0;
  std::size_t n_theta = kDefaultNTheta;
  std::string extension = "none";
  std::vector<double> lambdas;  // optional, one per j
  std::vector<SFunction> data;
};

std::string format_sigma_table(const SigmaTable& t);
/// Throws InvalidInput on malformed rows, missing metadata, negative sigma or
/// an incomplete direction grid.
SigmaTable parse_sigma_table(const std::string& text);

struct ReportRecord {
  std::string identity;
  std::string domain;
  std::size_t j = 0;  // 0 when the identity has no eigen index
  double computed = 0.0;
  double expected = 0.0;
  double residual = 0.0;
  double resolution = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::string format_report(const std::vector<ReportRecord>& records);

/// JSON record of inverse solutions, and a polyline table of their boundaries.
std::string format_solutions_json(const std::vector<ReconstructionResult>& sols,
                                  std::size_t basis_order, double rhs, std::size_t starts,
                                  std::uint64_t seed);
std::string format_polylines(const std::vector<ReconstructionResult>& sols, std::size_t points);

std::string read_text_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_text_file_atomic(const std::string& path, const std::string& content);

enum class ExtensionMode { None, DegreeMinus2, ConstantRay };
std::string to_string(ExtensionMode m);
ExtensionMode parse_extension_mode(const std::string& s);

/// A point of a sampling locus and the s-values s_1..s_J observed there.
struct LocusSample {
  Point x;
  std::vector<double> values;
};

/// Samples of point-indexed s-functions along a closed strictly convex locus
/// (either orientation) become sigma_j(theta) on the uniform direction grid.
/// Normals are taken from central differences of the locus; throws
/// NonMonotoneNormals if they do not turn monotonically once around.
SigmaTable convert_pointwise_to_directional(const std::vector<LocusSample>& samples,
                                            std::size_t n_theta, ExtensionMode mode);

/// Text form: one sample per line, `x y s_1 ... s_J`; `#` starts a comment.
std::vector<LocusSample> parse_locus_samples(const std::string& text);

}  // namespace invdom
