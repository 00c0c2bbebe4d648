#include "invdom/grid.hpp"

#include <cmath>
#include <functional>

#include "invdom/errors.hpp"

namespace invdom {

namespace {

// Bisection for g(t) = target on [lo, hi] with g increasing.
double solve_increasing(const std::function<double(double)>& g, double lo, double hi,
                        double target) {
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Point boundary_at(const SupportFn& s, double t) {
  const double h = s.value(t);
  const double hp = s.d1(t);
  const double c = std::cos(t);
  const double sn = std::sin(t);
  return {h * c - hp * sn, h * sn + hp * c};
}

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

CutCellGrid CutCellGrid::from_body(const ConvexBody& body, double spacing, double exclusion) {
  if (!(spacing > 0.0)) throw Error(ErrorKind::InvalidInput, "grid spacing must be positive");
  const SupportFn& s = body.support();
  if (convexity_check(s, 4 * body.n_theta()) <= 0.0) {
    throw Error(ErrorKind::DegenerateGaussMap, "h + h'' must be positive for a lattice cut");
  }
  const double xl = -s.value(kPi);
  const double xr = s.value(0.0);
  const double yb = -s.value(1.5 * kPi);
  const double yt = s.value(0.5 * kPi);

  CutCellGrid g;
  g.h_ = spacing;
  g.i0_ = static_cast<int>(std::floor(xl / spacing)) - 1;
  g.i1_ = static_cast<int>(std::ceil(xr / spacing)) + 1;
  g.j0_ = static_cast<int>(std::floor(yb / spacing)) - 1;
  g.j1_ = static_cast<int>(std::ceil(yt / spacing)) + 1;

  const auto ycoord = [&](double t) { return boundary_at(s, t).y; };
  const auto xcoord = [&](double t) { return boundary_at(s, t).x; };

  g.rows_.resize(static_cast<std::size_t>(g.j1_ - g.j0_ + 1));
  for (int j = g.j0_; j <= g.j1_; ++j) {
    const double y = j * spacing;
    if (!(yb < y && y < yt)) continue;
    // Right arc: theta in (-pi/2, pi/2), y increasing. Left arc: (pi/2, 3pi/2), y decreasing.
    const double tr = solve_increasing(ycoord, -0.5 * kPi, 0.5 * kPi, y);
    const double tl = solve_increasing([&](double t) { return -ycoord(t); }, 0.5 * kPi,
                                       1.5 * kPi, -y);
    g.rows_[static_cast<std::size_t>(j - g.j0_)] =
        LineCrossings{{xcoord(tl), wrap(tl)}, {xcoord(tr), wrap(tr)}};
  }
  g.cols_.resize(static_cast<std::size_t>(g.i1_ - g.i0_ + 1));
  for (int i = g.i0_; i <= g.i1_; ++i) {
    const double x = i * spacing;
    if (!(xl < x && x < xr)) continue;
    // Top arc: theta in (0, pi), x decreasing. Bottom arc: (pi, 2pi), x increasing.
    const double tt = solve_increasing([&](double t) { return -xcoord(t); }, 0.0, kPi, -x);
    const double tb = solve_increasing(xcoord, kPi, kTwoPi, x);
    g.cols_[static_cast<std::size_t>(i - g.i0_)] =
        LineCrossings{{ycoord(tb), wrap(tb)}, {ycoord(tt), wrap(tt)}};
  }
  g.finalize(exclusion);
  return g;
}

CutCellGrid CutCellGrid::from_box(double x0, double x1, double y0, double y1, double spacing,
                                  double exclusion) {
  if (!(spacing > 0.0) || !(x0 < x1) || !(y0 < y1)) {
    throw Error(ErrorKind::InvalidInput, "invalid box or spacing");
  }
  CutCellGrid g;
  g.h_ = spacing;
  g.i0_ = static_cast<int>(std::floor(x0 / spacing)) - 1;
  g.i1_ = static_cast<int>(std::ceil(x1 / spacing)) + 1;
  g.j0_ = static_cast<int>(std::floor(y0 / spacing)) - 1;
  g.j1_ = static_cast<int>(std::ceil(y1 / spacing)) + 1;
  g.rows_.resize(static_cast<std::size_t>(g.j1_ - g.j0_ + 1));
  for (int j = g.j0_; j <= g.j1_; ++j) {
    const double y = j * spacing;
    if (y0 < y && y < y1) {
      g.rows_[static_cast<std::size_t>(j - g.j0_)] = LineCrossings{{x0, kPi}, {x1, 0.0}};
    }
  }
  g.cols_.resize(static_cast<std::size_t>(g.i1_ - g.i0_ + 1));
  for (int i = g.i0_; i <= g.i1_; ++i) {
    const double x = i * spacing;
    if (x0 < x && x < x1) {
      g.cols_[static_cast<std::size_t>(i - g.i0_)] =
          LineCrossings{{y0, 1.5 * kPi}, {y1, 0.5 * kPi}};
    }
  }
  g.finalize(exclusion);
  return g;
}

void CutCellGrid::finalize(double exclusion) {
  const int ni = i1_ - i0_ + 1;
  const int nj = j1_ - j0_ + 1;
  index_.assign(static_cast<std::size_t>(ni) * static_cast<std::size_t>(nj), -1);
  const double margin = exclusion * h_;
  for (int j = j0_; j <= j1_; ++j) {
    const auto& r = row(j);
    if (!r) continue;
    for (int i = i0_; i <= i1_; ++i) {
      const auto& c = col(i);
      if (!c) continue;
      const double x = i * h_;
      const double y = j * h_;
      if (r->lo.coord + margin < x && x < r->hi.coord - margin && c->lo.coord + margin < y &&
          y < c->hi.coord - margin) {
        index_[static_cast<std::size_t>(j - j0_) * static_cast<std::size_t>(ni) +
               static_cast<std::size_t>(i - i0_)] = static_cast<long>(nodes_.size());
        nodes_.push_back({i, j});
      }
    }
  }
}

long CutCellGrid::index(int i, int j) const noexcept {
  if (i < i0_ || i > i1_ || j < j0_ || j > j1_) return -1;
  const auto ni = static_cast<std::size_t>(i1_ - i0_ + 1);
  return index_[static_cast<std::size_t>(j - j0_) * ni + static_cast<std::size_t>(i - i0_)];
}

const std::optional<LineCrossings>& CutCellGrid::row(int j) const {
  static const std::optional<LineCrossings> none;
  if (j < j0_ || j > j1_) return none;
  return rows_[static_cast<std::size_t>(j - j0_)];
}

const std::optional<LineCrossings>& CutCellGrid::col(int i) const {
  static const std::optional<LineCrossings> none;
  if (i < i0_ || i > i1_) return none;
  return cols_[static_cast<std::size_t>(i - i0_)];
}

double CutCellGrid::boundary_distance(std::size_t n, int di, int dj) const {
  const auto [i, j] = nodes_[n];
  const Point p = position(n);
  if (dj == 0) {
    const auto& r = *row(j);
    return di > 0 ? r.hi.coord - p.x : p.x - r.lo.coord;
  }
  const auto& c = *col(i);
  return dj > 0 ? c.hi.coord - p.y : p.y - c.lo.coord;
}

}  // namespace invdom
