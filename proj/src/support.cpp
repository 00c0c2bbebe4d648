#include "invdom/support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "invdom/errors.hpp"

namespace invdom {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConvexityViolation: return "ConvexityViolation";
    case ErrorKind::DegenerateGaussMap: return "DegenerateGaussMap";
    case ErrorKind::SingularPotential: return "SingularPotential";
    case ErrorKind::NonpositiveData: return "NonpositiveData";
    case ErrorKind::OriginInsideDomain: return "OriginInsideDomain";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::DataDirectionMismatch: return "DataDirectionMismatch";
    case ErrorKind::NoDescent: return "NoDescent";
    case ErrorKind::NonConvexSupport: return "NonConvexSupport";
    case ErrorKind::NonMonotoneNormals: return "NonMonotoneNormals";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Direction::Direction(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a value just below a multiple of 2 pi can round up to 2 pi.
  if (t >= kTwoPi) t = 0.0;
  theta_ = t;
}

Point Direction::unit() const noexcept { return {std::cos(theta_), std::sin(theta_)}; }

std::vector<double> theta_grid(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
  return t;
}

SupportFn::SupportFn(double a0, std::vector<Mode> modes) : a0_(a0), modes_(std::move(modes)) {}

SupportFn SupportFn::disk(double radius, Point center) {
  return SupportFn(radius, {Mode{center.x, center.y}});
}

SupportFn SupportFn::point(Point p) { return SupportFn(0.0, {Mode{p.x, p.y}}); }

SupportFn SupportFn::segment(double half_length, double phi, std::size_t order) {
  // |cos u| = 2/pi + (4/pi) sum_n (-1)^(n+1) cos(2 n u) / (4 n^2 - 1)
  std::vector<Mode> modes(order);
  const double n1 = static_cast<double>(order) + 1.0;
  for (std::size_t k = 2; k <= order; k += 2) {
    const double n = static_cast<double>(k / 2);
    const double sign = (k / 2) % 2 == 1 ? 1.0 : -1.0;
    const double c = half_length * (4.0 / kPi) * sign / (4.0 * n * n - 1.0);
    const double fejer = 1.0 - static_cast<double>(k) / n1;
    const double kk = static_cast<double>(k);
    modes[k - 1] = Mode{fejer * c * std::cos(kk * phi), fejer * c * std::sin(kk * phi)};
  }
  return SupportFn(half_length * 2.0 / kPi, std::move(modes));
}

SupportFn::Mode SupportFn::mode(std::size_t k) const noexcept {
  if (k == 0 || k > modes_.size()) return {};
  return modes_[k - 1];
}

double SupportFn::value(double theta) const {
  double v = a0_;
  for (std::size_t k = 1; k <= modes_.size(); ++k) {
    const double kt = static_cast<double>(k) * theta;
    v += modes_[k - 1].a * std::cos(kt) + modes_[k - 1].b * std::sin(kt);
  }
  return v;
}

double SupportFn::d1(double theta) const {
  double v = 0.0;
  for (std::size_t k = 1; k <= modes_.size(); ++k) {
    const double kd = static_cast<double>(k);
    v += kd * (-modes_[k - 1].a * std::sin(kd * theta) + modes_[k - 1].b * std::cos(kd * theta));
  }
  return v;
}

double SupportFn::d2(double theta) const {
  double v = 0.0;
  for (std::size_t k = 1; k <= modes_.size(); ++k) {
    const double kd = static_cast<double>(k);
    v -= kd * kd * (modes_[k - 1].a * std::cos(kd * theta) + modes_[k - 1].b * std::sin(kd * theta));
  }
  return v;
}

double SupportFn::curvature_radius(double theta) const {
  double v = a0_;
  for (std::size_t k = 2; k <= modes_.size(); ++k) {
    const double kd = static_cast<double>(k);
    v += (1.0 - kd * kd) *
         (modes_[k - 1].a * std::cos(kd * theta) + modes_[k - 1].b * std::sin(kd * theta));
  }
  return v;
}

double SupportFn::extended(Point x) const {
  const double r = std::hypot(x.x, x.y);
  if (r == 0.0) return 0.0;
  return r * value(std::atan2(x.y, x.x));
}

SupportFn SupportFn::operator+(const SupportFn& other) const {
  std::vector<Mode> m(std::max(order(), other.order()));
  for (std::size_t k = 1; k <= m.size(); ++k) {
    m[k - 1] = Mode{mode(k).a + other.mode(k).a, mode(k).b + other.mode(k).b};
  }
  return SupportFn(a0_ + other.a0_, std::move(m));
}

SupportFn SupportFn::operator-(const SupportFn& other) const { return *this + other * -1.0; }

SupportFn SupportFn::operator*(double t) const {
  std::vector<Mode> m = modes_;
  for (auto& md : m) {
    md.a *= t;
    md.b *= t;
  }
  return SupportFn(a0_ * t, std::move(m));
}

double support_of_points(std::span<const Point> points, Direction d) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "support_of_points: empty point set");
  const Point n = d.unit();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) best = std::max(best, p.x * n.x + p.y * n.y);
  return best;
}

ConvexBody::ConvexBody(SupportFn support, std::size_t n_theta)
    : support_(std::move(support)), n_theta_(n_theta), thetas_(theta_grid(n_theta)) {
  if (n_theta < 8) throw Error(ErrorKind::InvalidInput, "ConvexBody: n_theta must be at least 8");
  density_.reserve(n_theta);
  for (double t : thetas_) density_.push_back(support_.curvature_radius(t));
}

double ConvexBody::perimeter() const {
  // Trapezoid on a trig polynomial of order < n_theta is exact.
  return kTwoPi * support_.a0();
}

double ConvexBody::area() const {
  // A = 1/2 int h (h + h'') dtheta
  double s = 0.0;
  for (std::size_t i = 0; i < n_theta_; ++i) s += support_.value(thetas_[i]) * density_[i];
  return 0.5 * s * weight();
}

std::vector<double> ConvexBody::support_samples() const {
  std::vector<double> v(n_theta_);
  for (std::size_t i = 0; i < n_theta_; ++i) v[i] = support_.value(thetas_[i]);
  return v;
}

double eval_support(const SupportFn& h, Direction d) { return h.value(d.theta()); }

ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
  return ConvexBody(a.support() + b.support(), std::max(a.n_theta(), b.n_theta()));
}

ConvexBody scale(const ConvexBody& d, double t) {
  if (t < 0.0) throw Error(ErrorKind::InvalidInput, "scale: t must be non-negative");
  return ConvexBody(d.support() * t, d.n_theta());
}

double convexity_check(const SupportFn& h, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (double t : theta_grid(n)) m = std::min(m, h.curvature_radius(t));
  return m;
}

namespace {

void require_convex(const ConvexBody& d, double eps_conv) {
  for (std::size_t i = 0; i < d.n_theta(); ++i) {
    if (d.density()[i] < -eps_conv) {
      throw Error(ErrorKind::ConvexityViolation,
                  "h + h'' = " + std::to_string(d.density()[i]) + " at theta = " +
                      std::to_string(d.thetas()[i]));
    }
  }
}

}  // namespace

double boundary_integral_normal_fn(const ConvexBody& d, const std::function<double(Direction)>& f,
                                   double eps_conv) {
  require_convex(d, eps_conv);
  double s = 0.0;
  for (std::size_t i = 0; i < d.n_theta(); ++i) s += f(Direction(d.thetas()[i])) * d.density()[i];
  return s * d.weight();
}

double boundary_integral_normal_fn(const ConvexBody& d, std::span<const double> f_samples,
                                   double eps_conv) {
  if (f_samples.size() != d.n_theta()) {
    throw Error(ErrorKind::DataDirectionMismatch,
                "expected " + std::to_string(d.n_theta()) + " samples, got " +
                    std::to_string(f_samples.size()));
  }
  require_convex(d, eps_conv);
  double s = 0.0;
  for (std::size_t i = 0; i < d.n_theta(); ++i) s += f_samples[i] * d.density()[i];
  return s * d.weight();
}

double mixed_support_integral(const ConvexBody& d1, const ConvexBody& d2, double eps_conv) {
  const SupportFn& p2 = d2.support();
  return boundary_integral_normal_fn(
      d1, [&p2](Direction dir) { return p2.value(dir.theta()); }, eps_conv);
}

Point boundary_point(const ConvexBody& d, Direction dir) {
  const double t = dir.theta();
  const SupportFn& h = d.support();
  if (h.curvature_radius(t) <= 0.0) {
    throw Error(ErrorKind::DegenerateGaussMap,
                "h + h'' <= 0 at theta = " + std::to_string(t));
  }
  const double hv = h.value(t);
  const double hp = h.d1(t);
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {hv * c - hp * s, hv * s + hp * c};
}

std::vector<double> BodyPair::difference_samples(std::size_t n) const {
  std::vector<double> v(n);
  const auto t = theta_grid(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = first.support().value(t[i]) - second.support().value(t[i]);
  return v;
}

BodyPair BodyPair::operator+(const BodyPair& other) const {
  return BodyPair{minkowski_sum(first, other.first), minkowski_sum(second, other.second)};
}

BodyPair BodyPair::scaled(double t) const { return BodyPair{scale(first, t), scale(second, t)}; }

bool BodyPair::equivalent(const BodyPair& other, double tol) const {
  const SupportFn lhs = first.support() + other.second.support();
  const SupportFn rhs = second.support() + other.first.support();
  const std::size_t n = std::max<std::size_t>(
      {first.n_theta(), other.first.n_theta(), 4 * std::max(lhs.order(), rhs.order()) + 8});
  for (double t : theta_grid(n)) {
    if (std::abs(lhs.value(t) - rhs.value(t)) > tol) return false;
  }
  return true;
}

double pair_scalar_product(const BodyPair& a, const BodyPair& b, std::size_t n_theta) {
  const auto pa = a.difference_samples(n_theta);
  const auto pb = b.difference_samples(n_theta);
  double s = 0.0;
  for (std::size_t i = 0; i < n_theta; ++i) s += pa[i] * pb[i];
  return s * kTwoPi / static_cast<double>(n_theta);
}

}  // namespace invdom
