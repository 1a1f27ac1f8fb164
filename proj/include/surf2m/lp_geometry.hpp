#pragma once

#include <cmath>

#include "surf2m/errors.hpp"

namespace surf2m {

/// Even order 2m of the ambient norm: the unit ball is
/// x1^(2m) + x2^(2m) + x3^(2m) <= 1. m = 1 is the Euclidean case.
struct NormOrder {
  int m = 1;

  explicit constexpr NormOrder(int order_half) : m(order_half) {
    if (m < 1) raise(Errc::InvalidArgument, "NormOrder: m must be >= 1");
  }

  constexpr int two_m() const { return 2 * m; }
  /// Index of the odd root that inverts t -> t^(2m-1).
  constexpr int root_index() const { return 2 * m - 1; }
};

struct Vec3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

inline constexpr Vec3 operator+(Vec3 a, Vec3 b) {
  return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}
inline constexpr Vec3 operator-(Vec3 a, Vec3 b) {
  return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}
inline constexpr Vec3 operator*(double s, Vec3 v) {
  return {s * v.x1, s * v.x2, s * v.x3};
}
inline constexpr double dot(Vec3 a, Vec3 b) {
  return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}
inline constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3,
          a.x1 * b.x2 - a.x2 * b.x1};
}

/// Integer power by repeated squaring; exact for small exponents, so the
/// Euclidean specialization of every formula avoids std::pow round-off.
inline constexpr double int_pow(double base, int exponent) {
  double result = 1.0;
  double factor = base;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result *= factor;
    factor *= factor;
  }
  return result;
}

/// Signed odd root: the real solution y of y^k = t for odd k >= 1.
inline double odd_root(double t, int k) {
  if (k < 1 || k % 2 == 0)
    raise(Errc::InvalidArgument, "odd_root: index must be odd and positive");
  if (k == 1) return t;
  if (t == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(t), 1.0 / k), t);
}

/// t^(num/k) for even numerator num >= 0 and odd k, i.e. |t|^(num/k).
/// Integer exponents take an exact path; num == 0 yields 1 even at t = 0,
/// matching the convention under which the curvature formulas reduce to the
/// classical Euclidean ones.
inline double frac_pow(double t, int num, int k) {
  if (num < 0 || k < 1)
    raise(Errc::InvalidArgument, "frac_pow: exponent out of contract");
  if (num == 0) return 1.0;
  if (num % k == 0) return int_pow(std::abs(t), num / k);
  return std::pow(std::abs(t), static_cast<double>(num) / k);
}

/// The defining polynomial of the norm: x1^(2m) + x2^(2m) + x3^(2m).
inline double power_sum(Vec3 v, NormOrder order) {
  const int p = order.two_m();
  return int_pow(v.x1, p) + int_pow(v.x2, p) + int_pow(v.x3, p);
}

/// The 2m-norm of v.
inline double norm_2m(Vec3 v, NormOrder order) {
  if (order.m == 1) return std::sqrt(power_sum(v, order));
  return std::pow(power_sum(v, order), 1.0 / order.two_m());
}

/// Gradient of power_sum: 2m * (x1^(2m-1), x2^(2m-1), x3^(2m-1)).
inline Vec3 power_sum_gradient(Vec3 v, NormOrder order) {
  const int p = order.root_index();
  const double s = static_cast<double>(order.two_m());
  return {s * int_pow(v.x1, p), s * int_pow(v.x2, p), s * int_pow(v.x3, p)};
}

/// Normal map for a level set with defining-function gradient w: the unique
/// point eta on the unit sphere of the 2m-norm whose supporting hyperplane
/// there is parallel to the tangent plane of the level set. Equivalently,
/// power_sum_gradient(eta) is parallel to w with a positive factor.
/// Raises DegenerateGradient when w vanishes.
inline Vec3 birkhoff_gauss_implicit(Vec3 gradient, NormOrder order) {
  const int k = order.root_index();
  const int num = order.two_m();
  const double a = frac_pow(gradient.x1, num, k) +
                   frac_pow(gradient.x2, num, k) +
                   frac_pow(gradient.x3, num, k);
  if (a == 0.0)
    raise(Errc::DegenerateGradient,
          "birkhoff_gauss_implicit: zero gradient has no normal direction");
  const double scale = std::pow(a, -1.0 / order.two_m());
  return {scale * odd_root(gradient.x1, k), scale * odd_root(gradient.x2, k),
          scale * odd_root(gradient.x3, k)};
}

/// Normal map for the graph x3 = f(x1, x2) with slopes (fu, fv), oriented
/// with a positive third component. Reduces to the Euclidean unit normal
/// (-fu, -fv, 1)/sqrt(1 + fu^2 + fv^2) at m = 1.
inline Vec3 birkhoff_gauss_graph(double fu, double fv, NormOrder order) {
  return birkhoff_gauss_implicit({-fu, -fv, 1.0}, order);
}

}  // namespace surf2m
