#pragma once

// Boundary data indexed by outward-normal direction.

#include <cstddef>
#include <vector>

namespace invdom {

/// Normal-derivative data of an eigenfunction, sampled on a uniform grid of
/// outward normal directions.
struct BoundaryTrace {
  std::vector<double> thetas;
  std::vector<double> normal_derivative;  // signed: du/dn (membrane) or d2u/dn2 (plate)
  std::vector<double> grad_sq;            // |grad u|^2 (membrane) or |lap u|^2 (plate)
};

/// sigma_j(theta): the s-function evaluated at the boundary point whose outward
/// normal is theta.
struct SFunction {
  std::size_t j = 0;
  std::vector<double> thetas;
  std::vector<double> sigma;
};

}  // namespace invdom
