#include "trace_util.hpp"

#include <algorithm>
#include <cmath>

#include "invdom/support.hpp"

namespace invdom::detail {

std::vector<double> resample_periodic(std::vector<TraceSample> samples, std::size_t n) {
  std::vector<double> out(n, 0.0);
  if (samples.empty()) return out;
  for (auto& p : samples) {
    p.theta = std::fmod(p.theta, kTwoPi);
    if (p.theta < 0.0) p.theta += kTwoPi;
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const TraceSample& a, const TraceSample& b) { return a.theta < b.theta; });
  const std::size_t m = samples.size();
  std::size_t hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    while (hi < m && samples[hi].theta < t) ++hi;
    const TraceSample& b = hi < m ? samples[hi] : samples[0];
    const TraceSample& a = hi > 0 ? samples[hi - 1] : samples[m - 1];
    const double tb = hi < m ? b.theta : b.theta + kTwoPi;
    const double ta = hi > 0 ? a.theta : a.theta - kTwoPi;
    const double w = tb - ta;
    out[i] = w > 0.0 ? a.value + (b.value - a.value) * (t - ta) / w : b.value;
  }
  return out;
}

namespace {

void walk(const CutCellGrid& grid, const Eigen::VectorXd& u, const Crossing& cr, int fixed,
          bool along_row, int sgn, double min_component, double skip, std::size_t count,
          const std::function<void(const LineWalk&)>& visit) {
  const double h = grid.spacing();
  const double comp = along_row ? sgn * std::cos(cr.theta) : sgn * std::sin(cr.theta);
  if (std::abs(comp) < min_component) return;
  LineWalk lw;
  lw.theta = cr.theta;
  lw.component = comp;
  const int start = sgn > 0 ? static_cast<int>(std::floor(cr.coord / h)) + 1
                            : static_cast<int>(std::ceil(cr.coord / h)) - 1;
  for (int k = 0; k < static_cast<int>(count) + 3 && lw.values.size() < count; ++k) {
    const int m = start + sgn * k;
    const long idx = along_row ? grid.index(m, fixed) : grid.index(fixed, m);
    if (idx < 0) continue;
    const double s = std::abs(m * h - cr.coord);
    if (s < skip * h) continue;
    lw.s.push_back(s);
    lw.values.push_back(u(idx));
  }
  if (lw.values.size() == count) visit(lw);
}

}  // namespace

void for_each_line_walk(const CutCellGrid& grid, const Eigen::VectorXd& u, double min_component,
                        double skip, std::size_t count,
                        const std::function<void(const LineWalk&)>& visit) {
  for (int j = grid.j_min(); j <= grid.j_max(); ++j) {
    const auto& r = grid.row(j);
    if (!r) continue;
    walk(grid, u, r->lo, j, true, +1, min_component, skip, count, visit);
    walk(grid, u, r->hi, j, true, -1, min_component, skip, count, visit);
  }
  for (int i = grid.i_min(); i <= grid.i_max(); ++i) {
    const auto& c = grid.col(i);
    if (!c) continue;
    walk(grid, u, c->lo, i, false, +1, min_component, skip, count, visit);
    walk(grid, u, c->hi, i, false, -1, min_component, skip, count, visit);
  }
}

}  // namespace invdom::detail
