#pragma once

// Support-function calculus for convex planar bodies.
//
// A body is represented by the Fourier series of its support function on the
// circle of outward normal directions,
//   h(theta) = a0 + sum_k (a_k cos k theta + b_k sin k theta).
// The boundary point with outward normal theta is
//   x(theta) = h n(theta) + h'(theta) n'(theta),
// and the boundary length element is ds = (h + h'') dtheta.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace invdom {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Default absolute tolerance on h + h'' below which a body is rejected.
inline constexpr double kDefaultConvexityTol = 1e-9;
/// Default number of trapezoid nodes on the circle of directions.
inline constexpr std::size_t kDefaultNTheta = 512;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Outward normal direction, stored as an angle in [0, 2 pi).
class Direction {
 public:
  Direction() = default;
  explicit Direction(double theta);

  double theta() const noexcept { return theta_; }
  Point unit() const noexcept;

 private:
  double theta_ = 0.0;
};

/// Uniform grid theta_i = 2 pi i / n, i = 0..n-1.
std::vector<double> theta_grid(std::size_t n);

/// Truncated Fourier series of a support function.
class SupportFn {
 public:
  struct Mode {
    double a = 0.0;  // cos coefficient
    double b = 0.0;  // sin coefficient
  };

  SupportFn() = default;
  /// modes[k-1] holds the order-k coefficients.
  SupportFn(double a0, std::vector<Mode> modes);

  static SupportFn disk(double radius, Point center = {});
  static SupportFn point(Point p);
  /// Fejer (Cesaro) smoothed series of the segment [-half_length e, half_length e]
  /// with e = (cos phi, sin phi). Smoothing keeps h + h'' >= 0 at every order.
  static SupportFn segment(double half_length, double phi, std::size_t order);

  double a0() const noexcept { return a0_; }
  std::size_t order() const noexcept { return modes_.size(); }
  const std::vector<Mode>& modes() const noexcept { return modes_; }
  Mode mode(std::size_t k) const noexcept;  // zero beyond the truncation order

  double value(double theta) const;
  double d1(double theta) const;
  double d2(double theta) const;
  /// h + h'', the boundary length per unit angle.
  double curvature_radius(double theta) const;

  /// Degree-1 positively homogeneous extension |x| h(x/|x|), zero at the origin.
  double extended(Point x) const;

  SupportFn operator+(const SupportFn& other) const;
  SupportFn operator-(const SupportFn& other) const;
  SupportFn operator*(double t) const;

 private:
  double a0_ = 0.0;
  std::vector<Mode> modes_;
};

/// Support function of a finite point set, straight from the definition
/// max_{l in D} (n, l). Used for polytopes and degenerate bodies.
double support_of_points(std::span<const Point> points, Direction d);

/// A convex body: support function plus the quadrature used for boundary
/// integrals over the circle of normals.
class ConvexBody {
 public:
  explicit ConvexBody(SupportFn support, std::size_t n_theta = kDefaultNTheta);

  const SupportFn& support() const noexcept { return support_; }
  std::size_t n_theta() const noexcept { return n_theta_; }
  const std::vector<double>& thetas() const noexcept { return thetas_; }
  /// h + h'' at each quadrature node.
  const std::vector<double>& density() const noexcept { return density_; }
  double weight() const noexcept { return kTwoPi / static_cast<double>(n_theta_); }

  double perimeter() const;
  double area() const;
  /// Support function values at the quadrature nodes.
  std::vector<double> support_samples() const;

 private:
  SupportFn support_;
  std::size_t n_theta_;
  std::vector<double> thetas_;
  std::vector<double> density_;
};

double eval_support(const SupportFn& h, Direction d);
ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b);
ConvexBody scale(const ConvexBody& d, double t);

/// Minimum of h + h'' over n uniform samples.
double convexity_check(const SupportFn& h, std::size_t n);

/// Integral over the boundary of D of f(n(xi)) ds.
/// Throws ConvexityViolation when h + h'' < -eps_conv at a node.
double boundary_integral_normal_fn(const ConvexBody& d,
                                   const std::function<double(Direction)>& f,
                                   double eps_conv = kDefaultConvexityTol);
/// Same, with f given as samples on the body's quadrature grid.
double boundary_integral_normal_fn(const ConvexBody& d, std::span<const double> f_samples,
                                   double eps_conv = kDefaultConvexityTol);

/// Integral over the boundary of D1 of P_{D2}(n) ds. Symmetric in its arguments.
double mixed_support_integral(const ConvexBody& d1, const ConvexBody& d2,
                              double eps_conv = kDefaultConvexityTol);

/// Boundary point with outward normal d. Throws DegenerateGaussMap if h + h'' <= 0 there.
Point boundary_point(const ConvexBody& d, Direction dir);

/// Element of the space of difference pairs of convex bodies.
struct BodyPair {
  ConvexBody first;
  ConvexBody second;

  /// P_first - P_second on the quadrature grid.
  std::vector<double> difference_samples(std::size_t n) const;

  BodyPair operator+(const BodyPair& other) const;
  /// Only t >= 0 is supported.
  BodyPair scaled(double t) const;
  /// Quotient equality: (A, B) ~ (C, D) iff A + D = B + C.
  bool equivalent(const BodyPair& other, double tol = 1e-12) const;
};

/// Integral over the unit circle of (P_A1 - P_A2)(P_B1 - P_B2).
double pair_scalar_product(const BodyPair& a, const BodyPair& b,
                           std::size_t n_theta = kDefaultNTheta);

}  // namespace invdom
