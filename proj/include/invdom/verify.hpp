#pragma once

// Named identity checks run at several resolutions, producing report records.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "invdom/io.hpp"

namespace invdom {

/// Identity ids: shape-derivative, boundary-eigenvalue, basic-relation, interval-identity,
/// interval-endpoint, additivity, mixed-symmetry, plate-boundary-eigenvalue, plate-relation.
const std::vector<std::string>& known_identities();

struct VerifyConfig {
  DomainSpec domain;
  std::string domain_name = "domain";
  std::vector<std::string> identities;
  std::vector<double> resolutions{0.02, 0.01};  // grid spacings for 2D checks
  double c = 0.0;
  std::size_t j_max = 3;
  double a = 1.0;  // interval for interval-identity; interval-endpoint uses (0, b)
  double b = 2.0;
  std::size_t n_grid = 2000;  // coarse 1D grid before the Richardson step
  double tolerance_scale = 1.0;
  std::uint64_t seed = 1;
};

/// Tolerance multiplier for a named profile: default, strict or loose.
double tolerance_profile(const std::string& name);

/// Throws InvalidInput for unknown identity ids.
std::vector<ReportRecord> run_verification(const VerifyConfig& cfg);

}  // namespace invdom
