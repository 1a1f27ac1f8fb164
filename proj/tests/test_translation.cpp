#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "surf2m/curvature.hpp"
#include "surf2m/translation.hpp"

namespace {

using surf2m::Errc;
using surf2m::GraphJet2;
using surf2m::mean_curvature_graph;
using surf2m::mean_curvature_numeric;
using surf2m::mean_curvature_translation;
using surf2m::NormOrder;
using surf2m::profile_coordinate;
using surf2m::profile_coordinate_sup;
using surf2m::profile_parameter;
using surf2m::TranslationSpec;
using surf2m::TranslationSurface;
using surf2m::Vec3;

constexpr double kPi = 3.14159265358979323846;

// Independent closed form of the order-2 profile coordinate, obtained by
// partial fractions of 1/(1 + t^4).
double quartic_coordinate_reference(double s) {
  const double r = std::sqrt(2.0);
  return 3.0 * r / 8.0 *
             (std::log(s * s + r * s + 1.0) - std::log(s * s - r * s + 1.0)) +
         3.0 * r / 4.0 * (std::atan(r * s + 1.0) + std::atan(r * s - 1.0));
}

}  // namespace

TEST_CASE("profile coordinate reduces to the arctangent in the Euclidean case") {
  const NormOrder euclid(1);
  for (double s : {-5.0, -1.3, -0.2, 0.0, 0.4, 1.0, 2.7, 8.0}) {
    CHECK(std::abs(profile_coordinate(s, euclid) - std::atan(s)) < 1e-13);
  }
}

TEST_CASE("order-2 profile coordinate matches its closed form") {
  const NormOrder order(2);
  for (double s : {-3.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0}) {
    CHECK(std::abs(profile_coordinate(s, order) -
                   quartic_coordinate_reference(s)) < 1e-12);
  }
  CHECK(std::abs(profile_coordinate(1.0, order) - 2.6009189620197333) < 1e-12);
}

TEST_CASE("profile coordinate range bounds match their closed forms") {
  // Closed form of the limit: (2m-1) * (pi/(2m)) / sin(pi/(2m)).
  CHECK(std::abs(profile_coordinate_sup(NormOrder(1)) - kPi / 2.0) < 1e-11);
  CHECK(std::abs(profile_coordinate_sup(NormOrder(2)) - 3.332162203618775) <
        1e-11);
  const double sup3 = 5.0 * (kPi / 6.0) / std::sin(kPi / 6.0);
  CHECK(std::abs(profile_coordinate_sup(NormOrder(3)) - sup3) < 1e-11);
}

TEST_CASE("profile parameter inverts the profile coordinate") {
  for (int m : {1, 2, 3}) {
    const NormOrder order(m);
    const double sup = profile_coordinate_sup(order);
    for (double frac : {-0.9, -0.5, -0.1, 0.25, 0.6, 0.95}) {
      const double x = frac * sup;
      const double s = profile_parameter(x, order);
      CHECK(std::abs(profile_coordinate(s, order) - x) < 1e-12 * (1.0 + std::abs(x)));
    }
    for (double s : {-2.0, -0.7, 0.3, 1.9}) {
      const double x = profile_coordinate(s, order);
      CHECK(std::abs(profile_parameter(x, order) - s) < 1e-11 * (1.0 + std::abs(s)));
    }
  }
}

TEST_CASE("profile parameter rejects arguments beyond the coordinate range") {
  const NormOrder order(2);
  const double sup = profile_coordinate_sup(order);
  bool raised = false;
  try {
    profile_parameter(1.01 * sup, order);
  } catch (const surf2m::Error& e) {
    raised = (e.code() == Errc::OutOfRange);
  }
  CHECK(raised);
}

TEST_CASE("translation surfaces reject a zero separation constant") {
  TranslationSpec spec;
  spec.order = NormOrder(2);
  spec.separation_constant = 0.0;
  CHECK_THROWS_AS(TranslationSurface(spec), surf2m::Error);
}

TEST_CASE("translation graphs have vanishing curvature") {
  for (int m : {2, 3}) {
    for (double a : {1.0, -0.5}) {
      TranslationSpec spec;
      spec.order = NormOrder(m);
      spec.separation_constant = a;
      const TranslationSurface surface(spec);
      const double limit = 0.85 * surface.plane_limit();
      for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
          const double u = limit * (-0.9 + 0.3 * i);
          const double v = limit * (-0.9 + 0.3 * j);
          if (std::abs(u) < 0.05 * limit || std::abs(v) < 0.05 * limit)
            continue;  // slope floor excludes the axes outside Euclid
          const GraphJet2 jet = surface.graph_jet(u, v);
          const double h_special = mean_curvature_translation(
              jet.fu, jet.fuu, jet.fv, jet.fvv, spec.order);
          const double h_general = mean_curvature_graph(jet, spec.order);
          CHECK(std::abs(h_special) < 1e-12);
          CHECK(std::abs(h_general) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("the Euclidean translation surface is the classical saddle tower cell") {
  TranslationSpec spec;
  spec.order = NormOrder(1);
  spec.separation_constant = 0.85;
  const TranslationSurface surface(spec);
  const double a = spec.separation_constant;
  const double limit = 0.9 * surface.plane_limit();
  for (double u : {-0.8 * limit, -0.3 * limit, 0.2 * limit, 0.7 * limit}) {
    for (double v : {-0.7 * limit, 0.1 * limit, 0.6 * limit}) {
      const double reference = std::log(std::cos(a * v) / std::cos(a * u)) / a;
      CHECK(std::abs(surface.height(u, v) - reference) < 1e-10);
    }
  }
}

TEST_CASE("both parametrizations describe the same surface") {
  TranslationSpec spec;
  spec.order = NormOrder(2);
  spec.separation_constant = 1.3;
  const TranslationSurface surface(spec);
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double s = dist(rng);
    const double t = dist(rng);
    const Vec3 direct = surface.point_from_parameters(s, t);
    const Vec3 via_plane = surface.point_from_plane(direct.x1, direct.x2);
    CHECK(std::abs(direct.x1 - via_plane.x1) < 1e-10);
    CHECK(std::abs(direct.x2 - via_plane.x2) < 1e-10);
    CHECK(std::abs(direct.x3 - via_plane.x3) < 1e-10);
  }
}

TEST_CASE("closed-form jets match finite differences of the height") {
  TranslationSpec spec;
  spec.order = NormOrder(2);
  spec.separation_constant = -0.7;
  const TranslationSurface surface(spec);
  const double u = 0.4, v = -0.6, d = 1e-5;
  const GraphJet2 jet = surface.graph_jet(u, v);
  const double fu_fd =
      (surface.height(u + d, v) - surface.height(u - d, v)) / (2.0 * d);
  const double fv_fd =
      (surface.height(u, v + d) - surface.height(u, v - d)) / (2.0 * d);
  const double fuu_fd = (surface.height(u + d, v) - 2.0 * surface.height(u, v) +
                         surface.height(u - d, v)) /
                        (d * d);
  const double fvv_fd = (surface.height(u, v + d) - 2.0 * surface.height(u, v) +
                         surface.height(u, v - d)) /
                        (d * d);
  CHECK(std::abs(jet.fu - fu_fd) < 1e-7);
  CHECK(std::abs(jet.fv - fv_fd) < 1e-7);
  CHECK(std::abs(jet.fuu - fuu_fd) < 1e-4);
  CHECK(std::abs(jet.fvv - fvv_fd) < 1e-4);
}

TEST_CASE("the stencil oracle certifies a translation surface spot") {
  TranslationSpec spec;
  spec.order = NormOrder(2);
  spec.separation_constant = 1.0;
  spec.quadrature.abs_tol = 3e-14;
  spec.quadrature.rel_tol = 3e-14;
  const TranslationSurface surface(spec);
  auto position = [&](double s, double t) {
    return surface.point_from_parameters(s, t);
  };
  surf2m::OracleConfig cfg;
  cfg.step = 2e-4;
  const double h = mean_curvature_numeric(position, 0.8, -0.6, spec.order, cfg);
  CHECK(std::abs(h) < 1e-6);
}

TEST_CASE("plane points beyond the window are rejected") {
  TranslationSpec spec;
  spec.order = NormOrder(2);
  spec.separation_constant = 1.0;
  const TranslationSurface surface(spec);
  bool raised = false;
  try {
    surface.height(1.01 * surface.plane_limit(), 0.0);
  } catch (const surf2m::Error& e) {
    raised = (e.code() == Errc::OutOfRange);
  }
  CHECK(raised);
}
