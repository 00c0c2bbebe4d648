#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "invdom/grid.hpp"

namespace invdom::detail {

struct TraceSample {
  double theta = 0.0;
  double value = 0.0;
};

/// Periodic piecewise-linear interpolation of scattered samples onto the
/// uniform grid 2 pi i / n.
std::vector<double> resample_periodic(std::vector<TraceSample> samples, std::size_t n);

/// Node values along a lattice line, walking inward from a boundary crossing.
struct LineWalk {
  double theta = 0.0;      // outward normal at the crossing
  double component = 0.0;  // n . e for the inward line direction e
  std::vector<double> s;   // distances from the crossing
  std::vector<double> values;
};

/// Visits every row and column crossing with |n . e| >= min_component and at
/// least `count` usable nodes within count + 3 lattice steps. Nodes closer than
/// skip * spacing to the crossing are passed over.
void for_each_line_walk(const CutCellGrid& grid, const Eigen::VectorXd& u, double min_component,
                        double skip, std::size_t count,
                        const std::function<void(const LineWalk&)>& visit);

}  // namespace invdom::detail
