#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "surf2m/catalog.hpp"
#include "surf2m/curvature.hpp"
#include "surf2m/homothetical.hpp"
#include "surf2m/mesh.hpp"
#include "surf2m/separable.hpp"
#include "surf2m/translation.hpp"

namespace surf2m {

enum class VerifyTier { Fast, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  VerifyTier tier = VerifyTier::Fast;
  /// Deliberately biases the curvature values of one check, so a harness can
  /// confirm that the battery actually fails when an invariant breaks.
  bool mutate = false;
};

namespace detail {

inline std::string metric_line(const char* label, double value, double tol) {
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, "%s = %.3g (tol %.3g)", label, value,
                tol);
  return buffer;
}

// Independent Euclidean mean curvature through the first and second
// fundamental forms, negated to match the normal-map half-trace orientation.
inline double euclidean_fundamental_forms(const GraphJet2& j) {
  const double e = 1.0 + j.fu * j.fu;
  const double f = j.fu * j.fv;
  const double g = 1.0 + j.fv * j.fv;
  const double w = std::sqrt(1.0 + j.fu * j.fu + j.fv * j.fv);
  return -((j.fuu / w) * g - 2.0 * (j.fuv / w) * f + (j.fvv / w) * e) /
         (2.0 * (e * g - f * f));
}

// Closed form of the order-4 profile coordinate, independent of quadrature.
inline double quartic_profile_reference(double s) {
  const double r2 = std::sqrt(2.0);
  return (3.0 * r2 / 8.0) *
             (std::log(s * s + r2 * s + 1.0) - std::log(s * s - r2 * s + 1.0)) +
         (3.0 * r2 / 4.0) *
             (std::atan(r2 * s + 1.0) + std::atan(r2 * s - 1.0));
}

}  // namespace detail

/// Runs the self-check battery and returns one result per check. The fast
/// tier covers every construction with small grids; the full tier adds the
/// dense sweeps and the independent stencil-oracle certifications.
inline std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> results;
  std::mt19937_64 rng(20260816ULL);
  const double mutation_bias = options.mutate ? 1e-3 : 0.0;
  auto add = [&](const std::string& name, bool passed,
                 const std::string& detail) {
    results.push_back({name, passed, detail});
  };

  {  // The order-2 formulas must reduce to the classical Euclidean ones.
    std::uniform_real_distribution<double> slope(-3.0, 3.0);
    std::uniform_real_distribution<double> curv(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      GraphJet2 jet;
      jet.fu = slope(rng);
      jet.fv = slope(rng);
      jet.fuu = curv(rng);
      jet.fuv = curv(rng);
      jet.fvv = curv(rng);
      const double got = mean_curvature_graph(jet, NormOrder(1));
      const double want = detail::euclidean_fundamental_forms(jet);
      worst = std::max(worst,
                       std::abs(got - want) / (1.0 + std::abs(want)));
    }
    add("euclidean-reduction", worst <= 1e-13,
        detail::metric_line("max rel error", worst, 1e-13));
  }

  {  // Quadrature-based profile coordinate against its order-4 closed form.
    double worst = 0.0;
    for (double s : {-3.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0})
      worst = std::max(worst, std::abs(profile_coordinate(s, NormOrder(2)) -
                                       detail::quartic_profile_reference(s)));
    add("quartic-closed-form", worst <= 1e-10,
        detail::metric_line("max error", worst, 1e-10));
  }

  {  // Translation surfaces: both curvature formulas vanish on a small grid.
    double worst = 0.0;
    for (int m : {2, 3}) {
      for (double a : {1.0, -0.5}) {
        TranslationSpec spec;
        spec.order = NormOrder(m);
        spec.separation_constant = a;
        const TranslationSurface surface(spec);
        const double limit = 0.9 * surface.plane_limit();
        for (double u : uniform_axis(-limit, limit, 15)) {
          if (std::abs(u) < 0.08 * limit) continue;
          const double s = surface.parameter_u(u);
          for (double v : uniform_axis(-limit, limit, 15)) {
            if (std::abs(v) < 0.08 * limit) continue;
            const GraphJet2 jet = surface.graph_jet_from_parameters(
                s, surface.parameter_v(v));
            const double special = mean_curvature_translation(
                jet.fu, jet.fuu, jet.fv, jet.fvv, spec.order);
            const double general = mean_curvature_graph(jet, spec.order);
            worst = std::max({worst, std::abs(special) + mutation_bias,
                              std::abs(general)});
          }
        }
      }
    }
    add("translation-minimality", worst <= 1e-8,
        detail::metric_line("max |H|", worst, 1e-8));
  }

  {  // Both translation parametrizations describe the same point set.
    TranslationSpec spec;
    spec.order = NormOrder(2);
    const TranslationSurface surface(spec);
    std::uniform_real_distribution<double> param(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      const Vec3 direct = surface.point_from_parameters(param(rng), param(rng));
      const Vec3 via_plane = surface.point_from_plane(direct.x1, direct.x2);
      worst = std::max(worst, std::abs(direct.x3 - via_plane.x3));
    }
    add("translation-equivalence", worst <= 1e-10,
        detail::metric_line("max height gap", worst, 1e-10));
  }

  {  // Homothetical surfaces: curvature formulas and round trips.
    double worst_h = 0.0, worst_rt = 0.0;
    for (int m : {1, 2, 3}) {
      HomotheticalSpec spec;
      spec.order = NormOrder(m);
      const HomotheticalSurface surface(spec);
      const double limit = surface.plane_limit();
      for (double u : {-1.7, -0.6, 0.4, 1.3}) {
        for (double frac : {-0.8, -0.35, 0.25, 0.75}) {
          const double v = frac * limit;
          const ProductJets jets = surface.factor_jets(u, v);
          const double special = mean_curvature_homothetical(
              jets.g, jets.gp, jets.gpp, jets.h, jets.hp, jets.hpp, spec.order);
          const GraphJet2 jet = surface.graph_jet(u, v);
          const double general = mean_curvature_graph(jet, spec.order);
          worst_h = std::max({worst_h, std::abs(special), std::abs(general)});
          const double back = surface.plane_coordinate(jets.h);
          worst_rt =
              std::max(worst_rt, std::abs(back - v) / (1.0 + std::abs(v)));
        }
      }
    }
    add("homothetical-minimality", worst_h <= 1e-7,
        detail::metric_line("max |H|", worst_h, 1e-7));
    add("homothetical-roundtrip", worst_rt <= 1e-10,
        detail::metric_line("max rel error", worst_rt, 1e-10));
  }

  {  // Catalog coefficient sets solve the constraint system; the rejected
     // one has an empty admissible region.
    double worst = 0.0;
    bool rejected_empty = false;
    for (const CatalogEntry& entry : separable_catalog()) {
      for (double r : constraint_residuals(entry.coefficients))
        worst = std::max(worst, std::abs(r));
      const auto mask = positivity_domain(
          build_profiles(entry.coefficients),
          uniform_axis(-entry.window, entry.window, 41),
          uniform_axis(-entry.window, entry.window, 41));
      if (entry.name == "example6.3")
        rejected_empty = !mask.any_inside;
      else if (!mask.any_inside)
        worst = 1.0;  // an admissible entry lost its region: fail loudly
    }
    add("separable-constraints", worst <= 1e-13 && rejected_empty,
        detail::metric_line("max residual", worst, 1e-13));
  }

  {  // The pointwise profile coupling vanishes on every admissible cell.
    double worst = 0.0;
    for (const CatalogEntry& entry : separable_catalog()) {
      if (entry.name == "example6.3") continue;
      const ProfileTriple profiles = build_profiles(entry.coefficients);
      const auto us = uniform_axis(-entry.window, entry.window, 21);
      const auto vs = uniform_axis(-entry.window, entry.window, 21);
      const auto mask = positivity_domain(profiles, us, vs);
      for (std::size_t i = 0; i < mask.rows; ++i)
        for (std::size_t j = 0; j < mask.cols; ++j)
          if (mask.at(i, j))
            worst = std::max(
                worst, std::abs(coupling_residual(profiles, us[i], vs[j])));
    }
    // Absolute bound: the exponential family's window-edge terms reach e^6,
    // so the cancellation residual inherits that scale.
    add("separable-coupling", worst <= 1e-10,
        detail::metric_line("max coupling", worst, 1e-10));
  }

  {  // The trigonometric solver lands on the constraint manifold.
    std::uniform_real_distribution<double> constant(0.2, 3.0);
    std::uniform_real_distribution<double> phase(-3.1, 3.1);
    std::uniform_real_distribution<double> rate(0.3, 2.5);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const CoefficientSet set =
          solve_trig_coefficients(constant(rng), constant(rng), constant(rng),
                                  phase(rng), phase(rng), rate(rng));
      for (double r : constraint_residuals(set))
        worst = std::max(worst, std::abs(r));
    }
    bool refused = false;
    try {
      solve_trig_coefficients(1.0, -2.0, 0.5, 0.0, 0.0);
    } catch (const Error& e) {
      refused = (e.code() == Errc::InfeasibleModuli);
    }
    add("trig-solver", worst <= 1e-13 && refused,
        detail::metric_line("max residual", worst, 1e-13));
  }

  {  // Implicit jets feed the general graph formula and it vanishes.
    double worst = 0.0;
    const std::array<int, 3> signs{1, 1, 1};
    for (const CatalogEntry& entry : separable_catalog()) {
      if (entry.name == "example6.3") continue;
      const ProfileTriple profiles = build_profiles(entry.coefficients);
      const auto us = uniform_axis(-entry.window, entry.window, 15);
      const auto vs = uniform_axis(-entry.window, entry.window, 15);
      const auto mask = positivity_domain(profiles, us, vs);
      for (int m : {1, 2, 3}) {
        const NormOrder order(m);
        for (std::size_t i = 0; i < mask.rows; ++i) {
          for (std::size_t j = 0; j < mask.cols; ++j) {
            if (!mask.at(i, j)) continue;
            const GraphJet2 jet = graph_jet_from_implicit(
                reconstruct_jets(profiles, signs, us[i], vs[j], order));
            worst = std::max(worst,
                             std::abs(mean_curvature_graph(jet, order)));
          }
        }
      }
    }
    add("separable-jets", worst <= 1e-8,
        detail::metric_line("max |H|", worst, 1e-8));
  }

  {  // Meshing certifies each construction end to end on a coarse grid.
    double worst = 0.0;
    bool populated = true;
    {
      TranslationSpec spec;
      spec.order = NormOrder(2);
      const TranslationSurface surface(spec);
      const double limit = 0.9 * surface.plane_limit();
      const SurfaceMesh mesh =
          build_translation_mesh(surface, uniform_axis(-limit, limit, 20),
                                 uniform_axis(-limit, limit, 20));
      worst = std::max(worst, mesh.max_abs_curvature());
      populated = populated && mesh.any_position();
    }
    {
      HomotheticalSpec spec;
      spec.order = NormOrder(2);
      const HomotheticalSurface surface(spec);
      const double limit = 0.9 * surface.plane_limit();
      const SurfaceMesh mesh =
          build_homothetical_mesh(surface, uniform_axis(-1.8, 1.8, 20),
                                  uniform_axis(-limit, limit, 20));
      worst = std::max(worst, mesh.max_abs_curvature());
      populated = populated && mesh.any_position();
    }
    {
      const CatalogEntry entry = *find_catalog_entry("example6.1");
      const SurfaceMesh mesh = build_separable_mesh(
          build_profiles(entry.coefficients), {1, 1, 1}, 1.5, -2.7,
          uniform_axis(-entry.window, entry.window, 25),
          uniform_axis(-entry.window, entry.window, 25), NormOrder(2));
      worst = std::max(worst, mesh.max_abs_curvature());
      populated = populated && mesh.any_position();
    }
    add("mesh-certification", worst <= 1e-8 && populated,
        detail::metric_line("max |H|", worst, 1e-8));
  }

  if (options.tier == VerifyTier::Fast) return results;

  {  // Dense translation sweep across orders and separation constants.
    double worst = 0.0;
    for (int m : {2, 3}) {
      for (double a : {1.0, -0.5}) {
        TranslationSpec spec;
        spec.order = NormOrder(m);
        spec.separation_constant = a;
        const TranslationSurface surface(spec);
        const double limit = 0.9 * surface.plane_limit();
        const SurfaceMesh mesh =
            build_translation_mesh(surface, uniform_axis(-limit, limit, 50),
                                   uniform_axis(-limit, limit, 50));
        worst = std::max(worst, mesh.max_abs_curvature());
      }
    }
    add("translation-grid-sweep", worst <= 1e-8,
        detail::metric_line("max |H|", worst, 1e-8));
  }

  {  // Stencil oracle on the translation surface, sampled through the
     // noise-free profile parametrization.
    TranslationSpec spec;
    spec.order = NormOrder(2);
    spec.quadrature.abs_tol = 3e-14;
    spec.quadrature.rel_tol = 3e-14;
    spec.inversion.tolerance = 1e-14;
    const TranslationSurface surface(spec);
    auto position = [&](double s, double t) {
      return surface.point_from_parameters(s, t);
    };
    OracleConfig cfg;
    cfg.step = 2e-4;
    double worst = 0.0;
    const double spots[][2] = {
        {0.8, -0.6}, {-0.7, 0.5}, {0.6, 0.9}, {-0.9, -0.4}, {0.3, 0.7}};
    for (const auto& spot : spots)
      worst = std::max(worst, std::abs(mean_curvature_numeric(
                                  position, spot[0], spot[1], spec.order, cfg)));
    add("translation-oracle", worst <= 1e-6,
        detail::metric_line("max |H|", worst, 1e-6));
  }

  {  // Stencil oracle on the homothetical surface.
    HomotheticalSpec spec;
    spec.order = NormOrder(2);
    spec.quadrature.abs_tol = 3e-14;
    spec.quadrature.rel_tol = 3e-14;
    spec.inversion.tolerance = 1e-14;
    const HomotheticalSurface surface(spec);
    const double limit = surface.plane_limit();
    auto position = [&](double u, double v) { return surface.point(u, v); };
    OracleConfig cfg;
    cfg.step = 2e-4;
    double worst = 0.0;
    const double spots[][2] = {{0.9, 0.4 * limit}, {-0.8, -0.55 * limit}};
    for (const auto& spot : spots)
      worst = std::max(worst, std::abs(mean_curvature_numeric(
                                  position, spot[0], spot[1], spec.order, cfg)));
    add("homothetical-oracle", worst <= 1e-6,
        detail::metric_line("max |H|", worst, 1e-6));
  }

  {  // Stencil oracle on a reconstructed separable patch.
    const CatalogEntry entry = *find_catalog_entry("example6.1");
    const ProfileTriple profiles = build_profiles(entry.coefficients);
    const NormOrder order(2);
    QuadratureConfig tight;
    tight.abs_tol = 3e-14;
    tight.rel_tol = 3e-14;
    auto position = [&](double u, double v) {
      return reconstruct_point(profiles, {1, 1, 1}, 1.5, -2.7, u, v, order,
                               tight);
    };
    OracleConfig cfg;
    cfg.step = 2e-4;
    const double h = mean_curvature_numeric(position, 1.6, -2.8, order, cfg);
    add("separable-oracle", std::abs(h) <= 1e-6,
        detail::metric_line("max |H|", std::abs(h), 1e-6));
  }

  {  // The oracle itself converges at second order on a known graph.
    auto height = [](double u, double v) {
      return std::sin(u) * std::cos(v) + 0.3 * u * u * v + 0.05 * v * v * v;
    };
    auto position = [&](double u, double v) {
      return Vec3{u, v, height(u, v)};
    };
    GraphJet2 jet;
    const double u = 0.7, v = 0.9;
    jet.fu = std::cos(u) * std::cos(v) + 0.6 * u * v;
    jet.fv = -std::sin(u) * std::sin(v) + 0.3 * u * u + 0.15 * v * v;
    jet.fuu = -std::sin(u) * std::cos(v) + 0.6 * v;
    jet.fuv = -std::cos(u) * std::sin(v) + 0.6 * u;
    jet.fvv = -std::sin(u) * std::cos(v) + 0.3 * v;
    const NormOrder order(2);
    const double analytic = mean_curvature_graph(jet, order);
    double errors[3];
    double step = 0.02;
    for (int i = 0; i < 3; ++i) {
      OracleConfig cfg;
      cfg.step = step;
      errors[i] = std::abs(
          mean_curvature_numeric(position, u, v, order, cfg) - analytic);
      step *= 0.5;
    }
    bool ordered = true;
    double worst_order = 2.0;
    for (int i = 0; i + 1 < 3; ++i) {
      const double p = std::log2(errors[i] / errors[i + 1]);
      if (!(p > 1.7 && p < 2.3)) ordered = false;
      worst_order = p;
    }
    add("oracle-order", ordered,
        detail::metric_line("last order", worst_order, 2.0));
  }

  {  // Dense inversion round trips for both profile-based surfaces.
    double worst = 0.0;
    std::uniform_real_distribution<double> frac(-0.95, 0.95);
    for (int m : {2, 3}) {
      TranslationSpec tspec;
      tspec.order = NormOrder(m);
      const TranslationSurface translation(tspec);
      HomotheticalSpec hspec;
      hspec.order = NormOrder(m);
      const HomotheticalSurface homothetical(hspec);
      for (int i = 0; i < 60; ++i) {
        const double u = frac(rng) * translation.plane_limit();
        const double s = translation.parameter_u(u);
        const double back =
            profile_coordinate(s, tspec.order, tspec.quadrature) /
            tspec.separation_constant;
        worst = std::max(worst, std::abs(back - u) / (1.0 + std::abs(u)));
        const double c = frac(rng) * homothetical.plane_limit();
        const double h = homothetical.profile_value(c);
        worst = std::max(worst, std::abs(homothetical.plane_coordinate(h) - c) /
                                    (1.0 + std::abs(c)));
      }
    }
    add("inversion-sweep", worst <= 1e-10,
        detail::metric_line("max rel error", worst, 1e-10));
  }

  {  // Third-derivative structure across random profiles of each family.
    std::uniform_real_distribution<double> coeff(0.5, 2.0);
    std::uniform_real_distribution<double> rate(0.4, 2.0);
    std::uniform_real_distribution<double> where(-2.0, 2.0);
    double worst = 0.0;
    int counted = 0;
    for (int i = 0; i < 100; ++i) {
      const double b = rate(rng);
      for (SeparableKind kind :
           {SeparableKind::Exponential, SeparableKind::Trigonometric,
            SeparableKind::Polynomial}) {
        const ProfileFunction profile(
            kind, b, AxisCoefficients{coeff(rng), coeff(rng), coeff(rng)});
        const double t = where(rng);
        if (std::abs(profile.d1(t)) < 1e-3) continue;
        const double expected = kind == SeparableKind::Exponential ? b * b
                                : kind == SeparableKind::Trigonometric
                                    ? -b * b
                                    : 0.0;
        worst = std::max(
            worst, std::abs(third_derivative_ratio(profile, t) - expected));
        ++counted;
      }
    }
    add("third-derivative-sweep", worst <= 1e-10 && counted >= 150,
        detail::metric_line("max error", worst, 1e-10));
  }

  return results;
}

}  // namespace surf2m
