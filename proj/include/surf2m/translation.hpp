#pragma once

#include <cmath>

#include "surf2m/curvature.hpp"
#include "surf2m/errors.hpp"
#include "surf2m/lp_geometry.hpp"
#include "surf2m/numerics.hpp"

namespace surf2m {

/// Strictly increasing odd coordinate change s -> (2m-1) * int_0^s dt/(1+t^(2m)).
/// Its range is the bounded interval (-sup, sup); see profile_coordinate_sup.
inline double profile_coordinate(double s, NormOrder order,
                                 QuadratureConfig cfg = {}) {
  const int p = order.two_m();
  const double magnitude =
      integrate([p](double t) { return 1.0 / (1.0 + int_pow(t, p)); }, 0.0,
                std::abs(s), cfg)
          .value;
  return std::copysign(order.root_index() * magnitude, s);
}

/// Supremum of profile_coordinate, i.e. its limit at +infinity, computed by
/// truncating the tail below the requested absolute tolerance.
inline double profile_coordinate_sup(NormOrder order,
                                     QuadratureConfig cfg = {}) {
  // The tail beyond T contributes less than T^-(2m-1), so truncating at
  // tol^(-1/(2m-1)) keeps the omitted mass inside the tolerance.
  const double truncation = std::max(
      10.0, std::pow(cfg.abs_tol, -1.0 / order.root_index()));
  return profile_coordinate(truncation, order, cfg);
}

/// Inverse of profile_coordinate. Raises OutOfRange when the argument lies
/// outside the open range (-sup, sup).
inline double profile_parameter(double x, NormOrder order,
                                QuadratureConfig qcfg = {},
                                InversionConfig icfg = {}) {
  const double sup = profile_coordinate_sup(order, qcfg);
  if (std::abs(x) >= sup)
    raise(Errc::OutOfRange,
          "profile_parameter: argument outside the coordinate range");
  const double s = invert_monotone(
      [&](double r) { return profile_coordinate(r, order, qcfg); },
      std::abs(x), {0.0, 1.0}, icfg);
  return std::copysign(s, x);
}

struct TranslationSpec {
  NormOrder order{1};
  /// Nonzero constant coupling the two profile curves; its sign mirrors the
  /// surface, its magnitude scales the plane window.
  double separation_constant = 1.0;
  QuadratureConfig quadrature{};
  InversionConfig inversion{};
};

/// Minimal translation graph x3 = g(x1) + h(x2) for the 2m-norm. Exposes
/// both the closed-form parametrization by the profile parameters (s, t) and
/// the graph view over the plane window |x1|, |x2| < plane_limit(), together
/// with the closed-form second-order jet used by the curvature formulas.
class TranslationSurface {
 public:
  explicit TranslationSurface(TranslationSpec spec) : spec_(spec) {
    if (!(std::isfinite(spec_.separation_constant)) ||
        spec_.separation_constant == 0.0)
      raise(Errc::InvalidArgument,
            "TranslationSurface: separation constant must be finite and nonzero");
    sup_ = profile_coordinate_sup(spec_.order, spec_.quadrature);
  }

  const TranslationSpec& spec() const { return spec_; }
  /// Range bound of the profile coordinate.
  double coordinate_sup() const { return sup_; }
  /// Half-width of the square plane window over which the graph is defined.
  double plane_limit() const {
    return sup_ / std::abs(spec_.separation_constant);
  }

  /// Profile parameter s with profile_coordinate(s) = a * u.
  double parameter_u(double u) const {
    return invert_coordinate(spec_.separation_constant * u);
  }
  /// Profile parameter t with profile_coordinate(t) = -a * v.
  double parameter_v(double v) const {
    return invert_coordinate(-spec_.separation_constant * v);
  }

  /// Closed-form point in the (s, t) parametrization.
  Vec3 point_from_parameters(double s, double t) const {
    const double a = spec_.separation_constant;
    return {profile_coordinate(s, spec_.order, spec_.quadrature) / a,
            -profile_coordinate(t, spec_.order, spec_.quadrature) / a,
            height_from_parameters(s, t)};
  }

  /// Height of the graph in the (s, t) parametrization; pure arithmetic, so
  /// meshing can invert each grid line once and reuse the parameters.
  double height_from_parameters(double s, double t) const {
    const double a = spec_.separation_constant;
    const int p = spec_.order.two_m();
    const double scale = static_cast<double>(spec_.order.root_index()) / p;
    return (scale / a) *
           (std::log1p(int_pow(s, p)) - std::log1p(int_pow(t, p)));
  }

  /// Second-order graph jet in the (s, t) parametrization; pure arithmetic.
  GraphJet2 graph_jet_from_parameters(double s, double t) const {
    const double a = spec_.separation_constant;
    const int p = spec_.order.two_m();
    GraphJet2 jet;
    jet.fu = int_pow(s, p - 1);
    jet.fv = int_pow(t, p - 1);
    jet.fuu = a * int_pow(s, p - 2) * (1.0 + int_pow(s, p));
    jet.fuv = 0.0;
    jet.fvv = -a * int_pow(t, p - 2) * (1.0 + int_pow(t, p));
    return jet;
  }

  /// Same surface as a graph over the plane point (u, v).
  Vec3 point_from_plane(double u, double v) const {
    return {u, v, height(u, v)};
  }

  double height(double u, double v) const {
    return height_from_parameters(parameter_u(u), parameter_v(v));
  }

  /// Closed-form second-order jet of the graph at (u, v). The mixed second
  /// derivative vanishes identically for translation graphs.
  GraphJet2 graph_jet(double u, double v) const {
    return graph_jet_from_parameters(parameter_u(u), parameter_v(v));
  }

 private:
  double invert_coordinate(double x) const {
    if (std::abs(x) >= sup_)
      raise(Errc::OutOfRange,
            "TranslationSurface: plane point outside the graph window");
    const double s = invert_monotone(
        [&](double r) {
          return profile_coordinate(r, spec_.order, spec_.quadrature);
        },
        std::abs(x), {0.0, 1.0}, spec_.inversion);
    return std::copysign(s, x);
  }

  TranslationSpec spec_;
  double sup_ = 0.0;
};

}  // namespace surf2m
