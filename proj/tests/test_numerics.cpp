#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "surf2m/numerics.hpp"

namespace {

using surf2m::Errc;
using surf2m::integrate;
using surf2m::invert_monotone;
using surf2m::QuadratureConfig;

constexpr double kPi = 3.14159265358979323846;

template <class Fn>
Errc error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const surf2m::Error& e) {
    return e.code();
  }
  FAIL("expected a surf2m::Error to be thrown");
  return Errc::InvalidArgument;  // unreachable
}

// Independent fixed-grid oracle: composite Simpson rule with compensated
// summation. Used to pin reference values for the singular integrals below;
// callers must hand it an integrand that is already smooth (the tests apply
// a regularizing substitution first).
template <class Fn>
double simpson_oracle(Fn&& f, double a, double b, int intervals) {
  REQUIRE(intervals % 2 == 0);
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  double carry = 0.0;
  for (int i = 1; i < intervals; ++i) {
    const double w = (i % 2 == 1) ? 4.0 : 2.0;
    const double term = w * f(a + i * h) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("quadrature reproduces arctangent on a smooth integrand") {
  const auto r = integrate([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 1.0);
  CHECK(std::abs(r.value - kPi / 4.0) < 1e-14);
  CHECK(std::abs(r.value - kPi / 4.0) <= r.error_estimate + 1e-15);
  CHECK(r.evaluations >= 15);
}

TEST_CASE("quadrature meets the requested tolerance contract") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-12;
  cfg.rel_tol = 1e-12;
  const auto r = integrate([](double t) { return std::exp(t); }, 0.0, 1.0, cfg);
  const double exact = std::exp(1.0) - 1.0;
  CHECK(std::abs(r.value - exact) < 1e-13);
  CHECK(r.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
}

TEST_CASE("quadrature handles wide truncation intervals") {
  // The mass of this integrand sits entirely near the left endpoint of a
  // huge interval; a single panel would miss it.
  const auto r = integrate([](double t) { return 1.0 / (1.0 + t * t * t * t); },
                           0.0, 1.0e6);
  const double limit_value = kPi / (2.0 * std::sqrt(2.0));  // value on [0, inf)
  CHECK(std::abs(r.value - limit_value) < 1e-8);
}

TEST_CASE("quadrature is additive over adjacent subintervals") {
  auto f = [](double t) { return std::exp(-t * t) * std::cos(3.0 * t); };
  const double split = 1.37;
  const auto whole = integrate(f, 0.0, 3.0);
  const auto left = integrate(f, 0.0, split);
  const auto right = integrate(f, split, 3.0);
  CHECK(std::abs(whole.value - (left.value + right.value)) < 1e-12);
}

TEST_CASE("quadrature resolves inverse-square-root endpoint singularities") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-10;
  cfg.rel_tol = 1e-10;
  const auto r = integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, cfg);
  CHECK(std::abs(r.value - 2.0) < 5e-10);
  const auto s =
      integrate([](double t) { return std::pow(t, -5.0 / 6.0); }, 0.0, 1.0, cfg);
  CHECK(std::abs(s.value - 6.0) < 5e-10);
}

TEST_CASE("quadrature resolves algebraic singularities at an interval edge") {
  // Reference via an independent oracle: substitute x = cosh(p*p), after
  // which the integrand extends smoothly to the singular endpoint.
  const double theta_top = std::acosh(2.0);
  auto smooth = [](double p) {
    if (p == 0.0) return 2.0;  // limit value
    return 2.0 * p / std::sqrt(std::sinh(p * p));
  };
  const double reference = simpson_oracle(smooth, 0.0, std::sqrt(theta_top), 200000);
  const double frozen = 2.2332078137963904;
  REQUIRE(std::abs(reference - frozen) < 1e-12);

  QuadratureConfig cfg;
  cfg.abs_tol = 1e-10;
  cfg.rel_tol = 1e-10;
  auto integrand = [](double x) { return std::pow(x * x - 1.0, -0.75); };
  const auto r = integrate(integrand, 1.0, 2.0, cfg);
  CHECK(std::abs(r.value - frozen) < 5e-10);
  CHECK(r.error_estimate <= 1e-10 * (1.0 + std::abs(r.value)));
}

TEST_CASE("quadrature resolves stronger algebraic edge singularities") {
  // Same pattern with a harder exponent: x = cosh(p^3) regularizes
  // (x^2 - 1)^(-5/6) near x = 1.
  const double theta_top = std::acosh(2.0);
  auto smooth = [](double p) {
    if (p == 0.0) return 3.0;  // limit value
    const double s = std::sinh(p * p * p);
    return 3.0 * p * p * std::pow(s, -2.0 / 3.0);
  };
  const double reference =
      simpson_oracle(smooth, 0.0, std::cbrt(theta_top), 200000);
  const double frozen = 3.204634884631887;
  REQUIRE(std::abs(reference - frozen) < 1e-12);

  QuadratureConfig cfg;
  cfg.abs_tol = 1e-10;
  cfg.rel_tol = 1e-10;
  auto integrand = [](double x) { return std::pow(x * x - 1.0, -5.0 / 6.0); };
  const auto r = integrate(integrand, 1.0, 2.0, cfg);
  CHECK(std::abs(r.value - frozen) < 5e-10);
}

TEST_CASE("quadrature resolves exponential-difference singularities") {
  // Reference oracle: substitute w = p^4, which removes the w^(-3/4)
  // blow-up of (exp(w) - 1)^(-3/4) at w = 0.
  auto smooth = [](double p) {
    if (p == 0.0) return 4.0;  // limit value
    const double w = p * p * p * p;
    return 4.0 * p * p * p * std::pow(std::expm1(w), -0.75);
  };
  const double reference = simpson_oracle(smooth, 0.0, 1.0, 200000);
  const double frozen = 3.718104987595541;
  REQUIRE(std::abs(reference - frozen) < 1e-12);

  QuadratureConfig cfg;
  cfg.abs_tol = 1e-10;
  cfg.rel_tol = 1e-10;
  auto integrand = [](double w) { return std::pow(std::expm1(w), -0.75); };
  const auto r = integrate(integrand, 0.0, 1.0, cfg);
  CHECK(std::abs(r.value - frozen) < 5e-10);
}

TEST_CASE("quadrature reports non-finite interior values") {
  auto bad = [](double x) {
    if (x > 0.4 && x < 0.6) return std::numeric_limits<double>::infinity();
    return 1.0;
  };
  const Errc code = error_code_of([&] { integrate(bad, 0.0, 1.0); });
  CHECK(code == Errc::NonFinite);
}

TEST_CASE("quadrature refuses to certify below the roundoff floor") {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-17;
  cfg.rel_tol = 0.0;
  cfg.max_subdivisions = 60;
  const Errc code = error_code_of([&] {
    integrate([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 1.0, cfg);
  });
  CHECK(code == Errc::NonConvergence);
}

TEST_CASE("quadrature validates its interval arguments") {
  auto f = [](double) { return 1.0; };
  const Errc code = error_code_of([&] { integrate(f, 1.0, 0.0); });
  CHECK(code == Errc::InvalidArgument);
  const auto r = integrate(f, 2.0, 2.0);
  CHECK(r.value == 0.0);
  CHECK(r.error_estimate == 0.0);
}

TEST_CASE("monotone inversion recovers arguments of an increasing map") {
  auto f = [](double x) { return x * x * x + x; };
  const double target = f(1.7);
  const double x = invert_monotone(f, target, {0.0, 1.0});
  CHECK(std::abs(x - 1.7) < 1e-12);

  // Target below the seed bracket forces downward growth.
  const double y = invert_monotone(f, f(-2.3), {0.0, 1.0});
  CHECK(std::abs(y - (-2.3)) < 1e-12);
}

TEST_CASE("monotone inversion honors its acceptance tolerance") {
  surf2m::InversionConfig cfg;
  cfg.tolerance = 1e-13;
  auto f = [](double x) { return std::atan(x) + 0.2 * x; };
  const double target = 0.9;
  const double x = invert_monotone(f, target, {-1.0, 1.0}, cfg);
  CHECK(std::abs(f(x) - target) <= cfg.tolerance * (1.0 + std::abs(target)));
}

TEST_CASE("monotone inversion reports unreachable targets") {
  const Errc code = error_code_of(
      [&] { invert_monotone([](double x) { return std::tanh(x); }, 1.5, {-1.0, 1.0}); });
  CHECK(code == Errc::OutOfRange);
}

TEST_CASE("monotone inversion rejects an empty seed bracket") {
  auto f = [](double x) { return x; };
  const Errc code = error_code_of([&] { invert_monotone(f, 0.0, {1.0, 1.0}); });
  CHECK(code == Errc::InvalidArgument);
}
