#pragma once

#include <cmath>

#include "surf2m/curvature.hpp"
#include "surf2m/errors.hpp"
#include "surf2m/lp_geometry.hpp"
#include "surf2m/numerics.hpp"

namespace surf2m {

struct HomotheticalSpec {
  NormOrder order{1};
  /// Coefficient of the linear factor slope * x + offset; must be nonzero.
  double slope = 1.0;
  double offset = 0.0;
  /// Nonzero scale of the profile coordinate change; its sign selects the
  /// orientation of the profile factor.
  double rate = 1.0;
  /// When set, the profile factor depends on the first plane coordinate and
  /// the linear factor on the second, instead of the other way around.
  bool swapped = false;
  QuadratureConfig quadrature{};
  InversionConfig inversion{};
};

/// Value and first two derivatives of the profile factor at a plane point.
struct ProfileDerivatives {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Factor data of the product height g(x1) * h(x2), ordered for
/// mean_curvature_homothetical.
struct ProductJets {
  double g = 0.0, gp = 0.0, gpp = 0.0;
  double h = 0.0, hp = 0.0, hpp = 0.0;
};

/// Minimal homothetical graph x3 = g(x1) * h(x2) for the 2m-norm, with one
/// linear factor and one profile factor obtained by inverting an odd,
/// strictly monotone plane coordinate change. The profile coordinate is
/// confined to the window |coordinate| < plane_limit(); the linear
/// coordinate is unrestricted.
class HomotheticalSurface {
 public:
  explicit HomotheticalSurface(HomotheticalSpec spec) : spec_(spec) {
    if (!std::isfinite(spec_.slope) || spec_.slope == 0.0)
      raise(Errc::InvalidArgument,
            "HomotheticalSurface: slope must be finite and nonzero");
    if (!std::isfinite(spec_.rate) || spec_.rate == 0.0)
      raise(Errc::InvalidArgument,
            "HomotheticalSurface: rate must be finite and nonzero");
    if (!std::isfinite(spec_.offset))
      raise(Errc::InvalidArgument,
            "HomotheticalSurface: offset must be finite");
    const int k = spec_.order.root_index();
    alpha_ = frac_pow(spec_.slope, spec_.order.two_m() - 2, k);
    exponent_ = static_cast<double>(k) / spec_.order.m;
    // Truncation of the raw coordinate's limit: the integrand tail beyond T
    // is below slope^(-2q)/T, so choosing T = slope^(-2q)/abs_tol keeps the
    // omitted mass inside the tolerance.
    const double truncation =
        std::max(10.0, std::pow(std::abs(spec_.slope), -2.0 * exponent_) /
                           spec_.quadrature.abs_tol);
    raw_sup_ = raw_coordinate(truncation);
  }

  const HomotheticalSpec& spec() const { return spec_; }

  /// Odd, strictly monotone map from profile height to plane coordinate.
  double plane_coordinate(double h) const {
    return raw_coordinate(h) / spec_.rate;
  }

  /// Supremum of |plane_coordinate|: half-width of the profile window.
  double plane_limit() const { return raw_sup_ / std::abs(spec_.rate); }

  /// Inverse of plane_coordinate. Raises OutOfRange outside the open window.
  double profile_value(double coordinate) const {
    const double target = spec_.rate * coordinate;
    if (std::abs(target) >= raw_sup_)
      raise(Errc::OutOfRange,
            "HomotheticalSurface: plane point outside the profile window");
    const double h = invert_monotone(
        [&](double r) { return raw_coordinate(r); }, std::abs(target),
        {0.0, 1.0}, spec_.inversion);
    return std::copysign(h, target);
  }

  /// Profile factor value and derivatives with respect to the plane
  /// coordinate, in closed form given the inverted value.
  ProfileDerivatives profile_derivatives(double coordinate) const {
    const int k = spec_.order.root_index();
    const double a = spec_.slope;
    ProfileDerivatives out;
    out.value = profile_value(coordinate);
    const double base =
        alpha_ + a * a * frac_pow(out.value, spec_.order.two_m(), k);
    out.d1 = spec_.rate * std::pow(base, exponent_);
    out.d2 = spec_.rate * exponent_ * std::pow(base, exponent_ - 1.0) * a * a *
             (static_cast<double>(spec_.order.two_m()) / k) *
             odd_root(out.value, k) * out.d1;
    return out;
  }

  /// Assembles the factor jets from an already-inverted profile record and
  /// the linear plane coordinate, respecting the swapped orientation; meshing
  /// uses this to invert a profile grid line once and reuse it across the
  /// whole linear axis.
  ProductJets assemble_jets(const ProfileDerivatives& profile,
                            double linear_coordinate) const {
    const double linear = spec_.slope * linear_coordinate + spec_.offset;
    ProductJets jets;
    if (spec_.swapped) {
      jets.g = profile.value;
      jets.gp = profile.d1;
      jets.gpp = profile.d2;
      jets.h = linear;
      jets.hp = spec_.slope;
      jets.hpp = 0.0;
    } else {
      jets.g = linear;
      jets.gp = spec_.slope;
      jets.gpp = 0.0;
      jets.h = profile.value;
      jets.hp = profile.d1;
      jets.hpp = profile.d2;
    }
    return jets;
  }

  /// Both factors' values and derivatives at the plane point, ordered as
  /// (first-coordinate factor, second-coordinate factor).
  ProductJets factor_jets(double u, double v) const {
    return spec_.swapped ? assemble_jets(profile_derivatives(u), v)
                         : assemble_jets(profile_derivatives(v), u);
  }

  double height(double u, double v) const {
    const ProductJets jets = factor_jets(u, v);
    return jets.g * jets.h;
  }

  Vec3 point(double u, double v) const { return {u, v, height(u, v)}; }

  /// Second-order jet of the graph, assembled by the product rule.
  GraphJet2 graph_jet(double u, double v) const {
    const ProductJets jets = factor_jets(u, v);
    GraphJet2 out;
    out.fu = jets.gp * jets.h;
    out.fv = jets.g * jets.hp;
    out.fuu = jets.gpp * jets.h;
    out.fuv = jets.gp * jets.hp;
    out.fvv = jets.g * jets.hpp;
    return out;
  }

 private:
  // The raw coordinate is rate * plane_coordinate: an odd increasing map
  // with a finite limit, independent of the rate's sign.
  double raw_coordinate(double h) const {
    const double a = spec_.slope;
    const int p = spec_.order.two_m();
    const int k = spec_.order.root_index();
    const double q = exponent_;
    const double alpha = alpha_;
    const double magnitude =
        integrate(
            [&](double tau) {
              return std::pow(alpha + a * a * frac_pow(tau, p, k), -q);
            },
            0.0, std::abs(h), spec_.quadrature)
            .value;
    return std::copysign(magnitude, h);
  }

  HomotheticalSpec spec_;
  double alpha_ = 1.0;
  double exponent_ = 1.0;
  double raw_sup_ = 0.0;
};

}  // namespace surf2m
