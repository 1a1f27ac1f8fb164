#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "surf2m/curvature.hpp"
#include "surf2m/errors.hpp"
#include "surf2m/lp_geometry.hpp"
#include "surf2m/numerics.hpp"

namespace surf2m {

/// The three families of axis profiles whose second antiderivative structure
/// keeps the separable minimality residual independent of the parameters.
enum class SeparableKind { Exponential, Trigonometric, Polynomial };

inline const char* to_string(SeparableKind kind) {
  switch (kind) {
    case SeparableKind::Exponential: return "exponential";
    case SeparableKind::Trigonometric: return "trigonometric";
    case SeparableKind::Polynomial: return "polynomial";
  }
  return "unknown";
}

/// Coefficients of one axis profile: constant + first * basis1 + second *
/// basis2, where the basis pair is (exp(rate*t), exp(-rate*t)) for the
/// exponential family, (cos(rate*t), sin(rate*t)) for the trigonometric one,
/// and (t, t^2) for the polynomial one.
struct AxisCoefficients {
  double constant = 0.0;
  double first = 0.0;
  double second = 0.0;
};

struct CoefficientSet {
  SeparableKind kind = SeparableKind::Polynomial;
  /// Frequency/growth rate of the basis functions; unused by the polynomial
  /// family, must be nonzero for the other two.
  double rate = 1.0;
  std::array<AxisCoefficients, 3> axis{};
};

/// One axis profile with closed-form derivatives up to third order.
class ProfileFunction {
 public:
  ProfileFunction() = default;
  ProfileFunction(SeparableKind kind, double rate, AxisCoefficients c)
      : kind_(kind), rate_(rate), c_(c) {}

  SeparableKind kind() const { return kind_; }

  double value(double t) const {
    switch (kind_) {
      case SeparableKind::Exponential:
        return c_.constant + c_.first * std::exp(rate_ * t) +
               c_.second * std::exp(-rate_ * t);
      case SeparableKind::Trigonometric:
        return c_.constant + c_.first * std::cos(rate_ * t) +
               c_.second * std::sin(rate_ * t);
      case SeparableKind::Polynomial:
        return c_.constant + c_.first * t + c_.second * t * t;
    }
    return 0.0;
  }

  double d1(double t) const {
    switch (kind_) {
      case SeparableKind::Exponential:
        return rate_ * (c_.first * std::exp(rate_ * t) -
                        c_.second * std::exp(-rate_ * t));
      case SeparableKind::Trigonometric:
        return rate_ * (-c_.first * std::sin(rate_ * t) +
                        c_.second * std::cos(rate_ * t));
      case SeparableKind::Polynomial:
        return c_.first + 2.0 * c_.second * t;
    }
    return 0.0;
  }

  double d2(double t) const {
    switch (kind_) {
      case SeparableKind::Exponential:
        return rate_ * rate_ * (value(t) - c_.constant);
      case SeparableKind::Trigonometric:
        return -rate_ * rate_ * (value(t) - c_.constant);
      case SeparableKind::Polynomial:
        return 2.0 * c_.second;
    }
    return 0.0;
  }

  double d3(double t) const {
    switch (kind_) {
      case SeparableKind::Exponential:
        return rate_ * rate_ * d1(t);
      case SeparableKind::Trigonometric:
        return -rate_ * rate_ * d1(t);
      case SeparableKind::Polynomial:
        return 0.0;
    }
    return 0.0;
  }

 private:
  SeparableKind kind_ = SeparableKind::Polynomial;
  double rate_ = 1.0;
  AxisCoefficients c_{};
};

using ProfileTriple = std::array<ProfileFunction, 3>;

inline ProfileTriple build_profiles(const CoefficientSet& set) {
  if (set.kind != SeparableKind::Polynomial &&
      (!std::isfinite(set.rate) || set.rate == 0.0))
    raise(Errc::InvalidArgument,
          "build_profiles: rate must be finite and nonzero for this family");
  return {ProfileFunction(set.kind, set.rate, set.axis[0]),
          ProfileFunction(set.kind, set.rate, set.axis[1]),
          ProfileFunction(set.kind, set.rate, set.axis[2])};
}

/// The six algebraic constraints coupling the axis coefficients; a
/// coefficient set describes a minimal surface exactly when all six vanish.
inline std::array<double, 6> constraint_residuals(const CoefficientSet& set) {
  const double p1 = set.axis[0].constant, q1 = set.axis[0].first,
               r1 = set.axis[0].second;
  const double p2 = set.axis[1].constant, q2 = set.axis[1].first,
               r2 = set.axis[1].second;
  const double p3 = set.axis[2].constant, q3 = set.axis[2].first,
               r3 = set.axis[2].second;
  switch (set.kind) {
    case SeparableKind::Exponential:
      return {(p2 + p3) * r1 - 2.0 * q2 * q3, (p1 + p3) * r2 - 2.0 * q1 * q3,
              (p2 + p3) * q1 - 2.0 * r2 * r3, (p1 + p3) * q2 - 2.0 * r1 * r3,
              (p1 + p2) * q3 - 2.0 * r1 * r2, (p1 + p2) * r3 - 2.0 * q1 * q2};
    case SeparableKind::Trigonometric:
      return {(p2 + p3) * q1 - q2 * q3 + r2 * r3,
              (p2 + p3) * r1 + q2 * r3 + q3 * r2,
              (p1 + p3) * q2 - q1 * q3 + r1 * r3,
              (p1 + p3) * r2 + q1 * r3 + q3 * r1,
              (p1 + p2) * q3 - q1 * q2 + r1 * r2,
              (p1 + p2) * r3 + q1 * r2 + q2 * r1};
    case SeparableKind::Polynomial:
      return {(p2 + p3) * q1 + (p1 + p3) * q2 + (p1 + p2) * q3,
              2.0 * (p2 + p3) * r1 - 2.0 * (p1 + p2) * r3 + q2 * (q1 - q3),
              2.0 * (p1 + p3) * r2 - 2.0 * (p1 + p2) * r3 + q1 * (q2 - q3),
              (q2 - q3) * r1 - (q1 - q2) * r3, (q1 - q3) * r2 + (q1 - q2) * r3,
              r1 * r2 + r1 * r3 + r2 * r3};
  }
  raise(Errc::InvalidArgument, "constraint_residuals: unknown family");
}

/// Pointwise coupling between the three profiles on the plane u + v + w = 0;
/// the separable minimality residual is this value times a constant factor
/// (see separable_minimality_residual).
inline double coupling_residual(const ProfileTriple& profiles, double u,
                                double v) {
  const double w = -u - v;
  const double x = profiles[0].value(u), xp = profiles[0].d1(u);
  const double y = profiles[1].value(v), yp = profiles[1].d1(v);
  const double z = profiles[2].value(w), zp = profiles[2].d1(w);
  return (y + z) * xp + (z + x) * yp + (x + y) * zp;
}

/// Ratio of the third to the first derivative; constant on each family
/// (rate^2, -rate^2, and 0 respectively), which is the structural property
/// the families are built on. Raises DegenerateSlope where the first
/// derivative is too small to divide by.
inline double third_derivative_ratio(const ProfileFunction& profile,
                                     double t) {
  const double d1 = profile.d1(t);
  if (std::abs(d1) < 1e-10)
    raise(Errc::DegenerateSlope,
          "third_derivative_ratio: first derivative too close to zero");
  return profile.d3(t) / d1;
}

/// Solves the trigonometric constraint system for the first/second
/// coefficients given the three constants and two free phases. The moduli
/// are fixed by the constants; raises InfeasibleModuli when the required
/// squared moduli are negative (or the determined axis is degenerate).
inline CoefficientSet solve_trig_coefficients(double p1, double p2, double p3,
                                              double phase2, double phase3,
                                              double rate = 1.0) {
  const double pair23 = p2 + p3;
  const double mod2_sq = (p1 + p2) * pair23;
  const double mod3_sq = (p1 + p3) * pair23;
  if (pair23 == 0.0 || mod2_sq < 0.0 || mod3_sq < 0.0)
    raise(Errc::InfeasibleModuli,
          "solve_trig_coefficients: constants admit no real coefficient pair");
  const std::complex<double> s2 = std::polar(std::sqrt(mod2_sq), phase2);
  const std::complex<double> s3 = std::polar(std::sqrt(mod3_sq), phase3);
  const std::complex<double> s1 = std::conj(s2) * std::conj(s3) / pair23;
  CoefficientSet set;
  set.kind = SeparableKind::Trigonometric;
  set.rate = rate;
  set.axis[0] = {p1, s1.real(), s1.imag()};
  set.axis[1] = {p2, s2.real(), s2.imag()};
  set.axis[2] = {p3, s3.real(), s3.imag()};
  return set;
}

/// Grid mask of the admissible plane region: a cell is inside when all three
/// profiles exceed the positivity margin at (u_i, v_j, -u_i - v_j).
struct DomainMask {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<unsigned char> cells;
  bool any_inside = false;

  bool at(std::size_t i, std::size_t j) const { return cells[i * cols + j] != 0; }
};

inline DomainMask positivity_domain(const ProfileTriple& profiles,
                                    const std::vector<double>& us,
                                    const std::vector<double>& vs,
                                    double margin = 1e-9) {
  DomainMask mask;
  mask.rows = us.size();
  mask.cols = vs.size();
  mask.cells.assign(mask.rows * mask.cols, 0);
  for (std::size_t i = 0; i < mask.rows; ++i) {
    const double x = profiles[0].value(us[i]);
    if (!(x > margin)) continue;
    for (std::size_t j = 0; j < mask.cols; ++j) {
      const double y = profiles[1].value(vs[j]);
      if (!(y > margin)) continue;
      const double z = profiles[2].value(-us[i] - vs[j]);
      if (!(z > margin)) continue;
      mask.cells[i * mask.cols + j] = 1;
      mask.any_inside = true;
    }
  }
  return mask;
}

namespace detail {

inline void check_signs(const std::array<int, 3>& signs) {
  for (int s : signs)
    if (s != 1 && s != -1)
      raise(Errc::InvalidArgument, "separable signs must be +1 or -1");
}

// Scans a parameter leg for positivity before integrating over it; the
// sampling is dense enough for the gentle profiles of the three families but
// is a heuristic, so the margin should not be chosen razor thin.
inline void check_leg(const ProfileFunction& profile, double from, double to,
                      double margin) {
  constexpr int kSamples = 64;
  for (int i = 0; i <= kSamples; ++i) {
    const double t = from + (to - from) * (static_cast<double>(i) / kSamples);
    if (!(profile.value(t) > margin))
      raise(Errc::DomainViolation,
            "separable leg leaves the admissible region");
  }
}

inline double directed_profile_integral(const ProfileFunction& profile,
                                        double from, double to,
                                        double exponent,
                                        const QuadratureConfig& cfg) {
  const double lo = std::min(from, to);
  const double hi = std::max(from, to);
  const double magnitude =
      integrate([&](double t) { return std::pow(profile.value(t), -exponent); },
                lo, hi, cfg)
          .value;
  return (to >= from) ? magnitude : -magnitude;
}

}  // namespace detail

/// Maps a plane point to the surface point whose axis coordinates are the
/// sign-weighted integrals of the profile powers along the three legs from
/// the anchor. Raises DomainViolation when a leg leaves the region where the
/// profiles are positive.
inline Vec3 reconstruct_point(const ProfileTriple& profiles,
                              const std::array<int, 3>& signs, double anchor_u,
                              double anchor_v, double u, double v,
                              NormOrder order, QuadratureConfig cfg = {},
                              double margin = 1e-9) {
  detail::check_signs(signs);
  const double exponent =
      static_cast<double>(order.root_index()) / order.two_m();
  const double anchor_w = -anchor_u - anchor_v;
  const double w = -u - v;
  detail::check_leg(profiles[0], anchor_u, u, margin);
  detail::check_leg(profiles[1], anchor_v, v, margin);
  detail::check_leg(profiles[2], anchor_w, w, margin);
  return {signs[0] * detail::directed_profile_integral(profiles[0], anchor_u,
                                                       u, exponent, cfg),
          signs[1] * detail::directed_profile_integral(profiles[1], anchor_v,
                                                       v, exponent, cfg),
          signs[2] * detail::directed_profile_integral(profiles[2], anchor_w,
                                                       w, exponent, cfg)};
}

/// First and second derivatives of the three implicit axis functions at the
/// surface point over (u, v); all in closed form, no quadrature involved.
struct ImplicitAxisJets {
  std::array<double, 3> first{};
  std::array<double, 3> second{};
};

inline ImplicitAxisJets reconstruct_jets(const ProfileTriple& profiles,
                                         const std::array<int, 3>& signs,
                                         double u, double v, NormOrder order,
                                         double margin = 1e-9) {
  detail::check_signs(signs);
  const double exponent =
      static_cast<double>(order.root_index()) / order.two_m();
  const std::array<double, 3> at{u, v, -u - v};
  ImplicitAxisJets jets;
  for (int i = 0; i < 3; ++i) {
    const double value = profiles[i].value(at[i]);
    if (!(value > margin))
      raise(Errc::DomainViolation,
            "reconstruct_jets: point outside the admissible region");
    jets.first[i] = signs[i] * std::pow(value, exponent);
    // The sign squares away in the chain rule, so the second derivative is
    // sign-free.
    jets.second[i] =
        exponent * profiles[i].d1(at[i]) * std::pow(value, exponent - 1.0 / order.two_m());
  }
  return jets;
}

/// Views the implicit surface locally as a graph over the first two axes and
/// returns its second-order jet, obtained by implicit differentiation.
/// Raises DegenerateSlope when the third axis derivative is too small.
inline GraphJet2 graph_jet_from_implicit(const ImplicitAxisJets& jets) {
  const double denom = jets.first[2];
  if (std::abs(denom) < 1e-12)
    raise(Errc::DegenerateSlope,
          "graph_jet_from_implicit: third axis direction is tangent");
  GraphJet2 out;
  out.fu = -jets.first[0] / denom;
  out.fv = -jets.first[1] / denom;
  out.fuu = -(jets.second[0] + jets.second[2] * out.fu * out.fu) / denom;
  out.fvv = -(jets.second[1] + jets.second[2] * out.fv * out.fv) / denom;
  out.fuv = -(jets.second[2] * out.fu * out.fv) / denom;
  return out;
}

}  // namespace surf2m
