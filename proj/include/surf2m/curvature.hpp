#pragma once

#include <cmath>

#include "surf2m/errors.hpp"
#include "surf2m/lp_geometry.hpp"

namespace surf2m {

/// Second-order jet of a graph x3 = f(x1, x2).
struct GraphJet2 {
  double fu = 0.0;
  double fv = 0.0;
  double fuu = 0.0;
  double fuv = 0.0;
  double fvv = 0.0;
};

namespace detail {

// Outside the Euclidean case the normal map is not differentiable where a
// slope vanishes (the odd root has infinite derivative at zero), so the
// curvature formulas carry negative fractional powers of the slopes. Below
// this floor we refuse to evaluate rather than report a huge value.
inline constexpr double kSlopeFloor = 1e-12;

inline double curvature_prefactor(double a, NormOrder order) {
  const double tm = static_cast<double>(order.two_m());
  return -0.5 / order.root_index() * std::pow(a, -(tm + 1.0) / tm);
}

}  // namespace detail

/// Mean curvature (half-trace of the normal map differential) for a graph
/// x3 = f(x1, x2), evaluated from the second-order jet. The sign follows the
/// upward orientation of the normal; minimality is the vanishing of the
/// returned value, so certification does not depend on the sign convention.
/// Outside the Euclidean case, raises DegenerateSlope when either slope is
/// too close to zero for the formula to be meaningful.
inline double mean_curvature_graph(const GraphJet2& jet, NormOrder order) {
  const int k = order.root_index();
  const int num = order.two_m() - 2;
  if (order.m > 1 && (std::abs(jet.fu) < detail::kSlopeFloor ||
                      std::abs(jet.fv) < detail::kSlopeFloor))
    raise(Errc::DegenerateSlope,
          "mean_curvature_graph: slope below the evaluable floor");
  const double a = 1.0 + frac_pow(jet.fu, order.two_m(), k) +
                   frac_pow(jet.fv, order.two_m(), k);
  const double pu = frac_pow(jet.fu, num, k);
  const double pv = frac_pow(jet.fv, num, k);
  const double brace = (pv + jet.fv * jet.fv) * jet.fuu -
                       2.0 * jet.fu * jet.fv * jet.fuv +
                       (pu + jet.fu * jet.fu) * jet.fvv;
  return detail::curvature_prefactor(a, order) * brace / (pu * pv);
}

/// Mean curvature for a translation graph x3 = g(x1) + h(x2), written out
/// from the specialized formula (no mixed second derivative) rather than
/// delegated to mean_curvature_graph, so the two can cross-check each other.
inline double mean_curvature_translation(double gp, double gpp, double hp,
                                         double hpp, NormOrder order) {
  const int k = order.root_index();
  const int num = order.two_m() - 2;
  if (order.m > 1 && (std::abs(gp) < detail::kSlopeFloor ||
                      std::abs(hp) < detail::kSlopeFloor))
    raise(Errc::DegenerateSlope,
          "mean_curvature_translation: slope below the evaluable floor");
  const double a =
      1.0 + frac_pow(gp, order.two_m(), k) + frac_pow(hp, order.two_m(), k);
  const double pg = frac_pow(gp, num, k);
  const double ph = frac_pow(hp, num, k);
  const double brace = (ph + hp * hp) * gpp + (pg + gp * gp) * hpp;
  return detail::curvature_prefactor(a, order) * brace / (pg * ph);
}

/// Mean curvature for a homothetical graph x3 = g(x1) * h(x2), written out
/// from the specialized product-rule formula. The roles of the two factor
/// slopes are played by g'(x1)h(x2) and g(x1)h'(x2); outside the Euclidean
/// case, raises DegenerateFactor when either is too close to zero.
inline double mean_curvature_homothetical(double g, double gp, double gpp,
                                          double h, double hp, double hpp,
                                          NormOrder order) {
  const int k = order.root_index();
  const int num = order.two_m() - 2;
  const double su = gp * h;
  const double sv = g * hp;
  if (order.m > 1 && (std::abs(su) < detail::kSlopeFloor ||
                      std::abs(sv) < detail::kSlopeFloor))
    raise(Errc::DegenerateFactor,
          "mean_curvature_homothetical: factor slope below the evaluable floor");
  const double a =
      1.0 + frac_pow(su, order.two_m(), k) + frac_pow(sv, order.two_m(), k);
  const double pu = frac_pow(su, num, k);
  const double pv = frac_pow(sv, num, k);
  const double brace = (pv + sv * sv) * gpp * h -
                       2.0 * g * h * (gp * gp) * (hp * hp) +
                       (pu + su * su) * g * hpp;
  return detail::curvature_prefactor(a, order) * brace / (pu * pv);
}

/// Minimality residual for a separable surface described by three profile
/// functions: x is the first profile's value and xp its derivative at the
/// first parameter, and likewise (y, yp) at the second and (z, zp) at the
/// third parameter (the three parameters summing to zero on the surface).
/// The surface is minimal exactly where this vanishes.
inline double separable_minimality_residual(double x, double xp, double y,
                                            double yp, double z, double zp,
                                            NormOrder order) {
  const double coupling = (y + z) * xp + (z + x) * yp + (x + y) * zp;
  return (static_cast<double>(order.root_index()) / order.two_m()) * coupling;
}

/// Mean curvature of a separable surface from the same profile data; it is
/// the minimality residual scaled by a positive factor built from the sum of
/// the profiles, so both vanish together.
inline double mean_curvature_separable(double x, double xp, double y,
                                       double yp, double z, double zp,
                                       NormOrder order) {
  const double a = x + y + z;
  if (!(a > 0.0))
    raise(Errc::DegenerateFactor,
          "mean_curvature_separable: profile sum must be positive");
  const double residual =
      separable_minimality_residual(x, xp, y, yp, z, zp, order);
  const double tm = static_cast<double>(order.two_m());
  return residual * std::pow(a, -(tm + 1.0) / tm) /
         (2.0 * order.root_index());
}

struct OracleConfig {
  double step = 1e-4;
  double tangent_condition_limit = 1e8;
};

/// Independent curvature estimate that bypasses every closed-form curvature
/// expression above: it samples the position map on a stencil, forms the
/// normal map from cross products of finite-difference tangents, and reads
/// off the half-trace of the normal differential with a least-squares
/// projection onto the tangent plane. Second-order accurate in the step.
/// Raises DegenerateTangent when the sampled tangents are too close to
/// collinear for the projection to be trustworthy.
template <class Position>
double mean_curvature_numeric(Position&& position, double u, double v,
                              NormOrder order, OracleConfig cfg = {}) {
  const double h = cfg.step;
  auto normal_at = [&](double a, double b) {
    const Vec3 pu = (1.0 / (2.0 * h)) * (position(a + h, b) - position(a - h, b));
    const Vec3 pv = (1.0 / (2.0 * h)) * (position(a, b + h) - position(a, b - h));
    return birkhoff_gauss_implicit(cross(pu, pv), order);
  };
  const Vec3 eta_u =
      (1.0 / (2.0 * h)) * (normal_at(u + h, v) - normal_at(u - h, v));
  const Vec3 eta_v =
      (1.0 / (2.0 * h)) * (normal_at(u, v + h) - normal_at(u, v - h));
  const Vec3 xu =
      (1.0 / (2.0 * h)) * (position(u + h, v) - position(u - h, v));
  const Vec3 xv =
      (1.0 / (2.0 * h)) * (position(u, v + h) - position(u, v - h));

  const double g11 = dot(xu, xu);
  const double g12 = dot(xu, xv);
  const double g22 = dot(xv, xv);
  const double det = g11 * g22 - g12 * g12;
  const double tr = g11 + g22;
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  const double lambda_min = 0.5 * (tr - disc);
  const double lambda_max = 0.5 * (tr + disc);
  if (!(lambda_min > 0.0) ||
      std::sqrt(lambda_max / lambda_min) > cfg.tangent_condition_limit)
    raise(Errc::DegenerateTangent,
          "mean_curvature_numeric: sampled tangents are numerically collinear");

  // Tangential components of the normal differential via the Gram system.
  const double cuu = (g22 * dot(eta_u, xu) - g12 * dot(eta_u, xv)) / det;
  const double cvv = (g11 * dot(eta_v, xv) - g12 * dot(eta_v, xu)) / det;
  return 0.5 * (cuu + cvv);
}

}  // namespace surf2m
