// Acceptance battery: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion re-derives its expected values on the spot
// so the battery stays independent of the unit suite.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "surf2m/catalog.hpp"
#include "surf2m/curvature.hpp"
#include "surf2m/homothetical.hpp"
#include "surf2m/mesh.hpp"
#include "surf2m/separable.hpp"
#include "surf2m/translation.hpp"

namespace {

using namespace surf2m;
using clock_type = std::chrono::steady_clock;

int failures = 0;

std::string text(const char* format, ...) {
  char buffer[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

void report(int index, const char* name, bool passed,
            const std::string& detail) {
  std::printf("%s criterion %02d %-28s %s\n", passed ? "PASS" : "FAIL", index,
              name, detail.c_str());
  if (!passed) ++failures;
}

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

int run_cli(const std::string& arguments) {
  const std::string command =
      std::string(SURF2M_CLI_PATH) + " " + arguments + " > /dev/null 2>&1";
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

// Classical mean curvature of a Euclidean graph via the fundamental forms,
// oriented to match the normal-map half-trace convention.
double classical_graph_curvature(const GraphJet2& j) {
  const double big_e = 1.0 + j.fu * j.fu;
  const double big_f = j.fu * j.fv;
  const double big_g = 1.0 + j.fv * j.fv;
  const double w = std::sqrt(1.0 + j.fu * j.fu + j.fv * j.fv);
  return -(big_g * j.fuu - 2.0 * big_f * j.fuv + big_e * j.fvv) /
         (2.0 * w * (big_e * big_g - big_f * big_f));
}

void criterion_1_quartic_closed_form() {
  const auto start = clock_type::now();
  const double r2 = std::sqrt(2.0);
  double worst = 0.0;
  for (double s : {-3.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0}) {
    const double reference =
        (3.0 * r2 / 8.0) * (std::log(s * s + r2 * s + 1.0) -
                            std::log(s * s - r2 * s + 1.0)) +
        (3.0 * r2 / 4.0) *
            (std::atan(r2 * s + 1.0) + std::atan(r2 * s - 1.0));
    worst = std::max(worst,
                     std::abs(profile_coordinate(s, NormOrder(2)) - reference));
  }
  const double elapsed = seconds_since(start);
  report(1, "quartic-closed-form", worst < 1e-10 && elapsed < 1.0,
         text("max error %.3g (tol 1e-10), %.3fs (limit 1s)", worst, elapsed));
}

void criterion_2_euclidean_reduction() {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> slope(-3.0, 3.0);
  std::uniform_real_distribution<double> curv(-5.0, 5.0);
  double worst_jet = 0.0;
  for (int i = 0; i < 1000; ++i) {
    GraphJet2 jet;
    jet.fu = slope(rng);
    jet.fv = slope(rng);
    jet.fuu = curv(rng);
    jet.fuv = curv(rng);
    jet.fvv = curv(rng);
    const double got = mean_curvature_graph(jet, NormOrder(1));
    const double want = classical_graph_curvature(jet);
    worst_jet =
        std::max(worst_jet, std::abs(got - want) / (1.0 + std::abs(want)));
  }

  // At order one the translation construction is the classical doubly
  // periodic saddle z = log(cos(a v) / cos(a u)) / a.
  TranslationSpec spec;
  spec.order = NormOrder(1);
  spec.separation_constant = 1.0;
  const TranslationSurface surface(spec);
  const double limit = 0.9 * surface.plane_limit();
  double worst_saddle = 0.0;
  for (double u : uniform_axis(-limit, limit, 15))
    for (double v : uniform_axis(-limit, limit, 15)) {
      const double closed_form = std::log(std::cos(v) / std::cos(u));
      worst_saddle =
          std::max(worst_saddle, std::abs(surface.height(u, v) - closed_form));
    }

  report(2, "euclidean-reduction",
         worst_jet < 1e-13 && worst_saddle < 1e-10,
         text("jet rel %.3g (tol 1e-13), saddle %.3g (tol 1e-10)", worst_jet,
              worst_saddle));
}

void criterion_3_translation_certification() {
  const auto start = clock_type::now();
  double worst_analytic = 0.0;
  double worst_oracle = 0.0;
  const double fractions[5] = {-0.9, -0.6, 0.35, 0.6, 0.85};
  for (int m : {2, 3}) {
    for (double a : {1.0, -0.5}) {
      TranslationSpec spec;
      spec.order = NormOrder(m);
      spec.separation_constant = a;
      const TranslationSurface surface(spec);
      const double limit = 0.9 * surface.plane_limit();
      const auto axis = uniform_axis(-limit, limit, 50);
      const SurfaceMesh mesh = build_translation_mesh(surface, axis, axis);
      worst_analytic = std::max(worst_analytic, mesh.max_abs_curvature());

      TranslationSpec tight = spec;
      tight.quadrature.abs_tol = 3e-14;
      tight.quadrature.rel_tol = 3e-14;
      tight.inversion.tolerance = 1e-14;
      const TranslationSurface probe(tight);
      const double s_limit = probe.parameter_u(0.9 * limit);
      const double t_limit = probe.parameter_v(0.9 * limit);
      auto position = [&probe](double s, double t) {
        return probe.point_from_parameters(s, t);
      };
      OracleConfig cfg;
      cfg.step = 2e-4;
      for (double fs : fractions)
        for (double ft : fractions)
          worst_oracle = std::max(
              worst_oracle,
              std::abs(mean_curvature_numeric(position, fs * s_limit,
                                              ft * t_limit, spec.order, cfg)));
    }
  }
  const double elapsed = seconds_since(start);
  report(3, "translation-certification",
         worst_analytic < 1e-8 && worst_oracle < 1e-6 && elapsed < 30.0,
         text("analytic %.3g (tol 1e-8), oracle %.3g (tol 1e-6), %.1fs",
              worst_analytic, worst_oracle, elapsed));
}

void criterion_4_parametrization_equivalence() {
  TranslationSpec spec;
  spec.order = NormOrder(2);
  const TranslationSurface surface(spec);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> param(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec3 direct = surface.point_from_parameters(param(rng), param(rng));
    const Vec3 via_plane = surface.point_from_plane(direct.x1, direct.x2);
    worst = std::max(worst, std::abs(direct.x3 - via_plane.x3));
  }
  report(4, "parametrization-equivalence", worst < 1e-10,
         text("max height gap %.3g (tol 1e-10)", worst));
}

void criterion_5_homothetical_certification() {
  double worst_h = 0.0;
  double worst_rt = 0.0;
  for (int m : {2, 3}) {
    HomotheticalSpec spec;
    spec.order = NormOrder(m);
    const HomotheticalSurface surface(spec);
    const double limit = 0.9 * surface.plane_limit();
    for (double u : uniform_axis(-2.0, 2.0, 10)) {
      if (std::abs(u) < 1e-3) continue;
      for (double v : uniform_axis(-limit, limit, 10)) {
        if (std::abs(v) < 1e-3) continue;
        const ProductJets jets = surface.factor_jets(u, v);
        worst_h = std::max(
            worst_h, std::abs(mean_curvature_homothetical(
                         jets.g, jets.gp, jets.gpp, jets.h, jets.hp, jets.hpp,
                         spec.order)));
        const double back = surface.plane_coordinate(jets.h);
        worst_rt =
            std::max(worst_rt, std::abs(back - v) / (1.0 + std::abs(v)));
      }
    }
  }
  report(5, "homothetical-certification", worst_h < 1e-7 && worst_rt < 1e-10,
         text("residual %.3g (tol 1e-7), round trip %.3g (tol 1e-10)", worst_h,
              worst_rt));
}

void criterion_6_preset_pipeline() {
  namespace fs = std::filesystem;
  bool passed = true;
  std::string note;
  double worst = 0.0;
  for (const auto& name :
       {std::string("example6.1"), std::string("example6.2"),
        std::string("example6.4")}) {
    const fs::path report_path =
        fs::temp_directory_path() / ("surf2m_acceptance_" + name + ".json");
    const int code =
        run_cli("gen --family separable --preset " + name +
                " --grid 25 --out-report " + report_path.string());
    if (code != 0) {
      passed = false;
      note += name + " exit " + std::to_string(code) + "; ";
      continue;
    }
    std::ifstream in(report_path);
    nlohmann::json parsed;
    in >> parsed;
    for (const auto& residual : parsed.at("constraint_residuals"))
      worst = std::max(worst, std::abs(residual.get<double>()));
  }
  if (worst >= 1e-13) passed = false;

  const int gen_code = run_cli("gen --family separable --preset example6.3");
  const int check_code = run_cli("check --preset example6.3");
  if (gen_code != 3 || check_code != 1) {
    passed = false;
    note += text("rejected preset: gen %d (want 3), check %d (want 1); ",
                 gen_code, check_code);
  }
  report(6, "preset-pipeline", passed,
         note + text("max residual %.3g (tol 1e-13)", worst));
}

void criterion_7_coupling_identity() {
  double worst_valid = 0.0;
  for (const CatalogEntry& entry : separable_catalog()) {
    if (entry.name == "example6.3") continue;
    const ProfileTriple profiles = build_profiles(entry.coefficients);
    for (double u : uniform_axis(-entry.window, entry.window, 20))
      for (double v : uniform_axis(-entry.window, entry.window, 20))
        worst_valid =
            std::max(worst_valid, std::abs(coupling_residual(profiles, u, v)));
  }

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> constant(0.2, 3.0);
  std::uniform_real_distribution<double> phase(-3.1, 3.1);
  std::uniform_real_distribution<double> rate(0.5, 2.0);
  for (int i = 0; i < 20; ++i) {
    const CoefficientSet set =
        solve_trig_coefficients(constant(rng), constant(rng), constant(rng),
                                phase(rng), phase(rng), rate(rng));
    const ProfileTriple profiles = build_profiles(set);
    const double window = 3.141592653589793 / set.rate;
    for (double u : uniform_axis(-window, window, 20))
      for (double v : uniform_axis(-window, window, 20))
        worst_valid =
            std::max(worst_valid, std::abs(coupling_residual(profiles, u, v)));
  }

  CoefficientSet violated = find_catalog_entry("example6.1")->coefficients;
  violated.axis[0].constant += 0.1;
  const ProfileTriple broken = build_profiles(violated);
  double worst_violated = 0.0;
  for (double u : uniform_axis(-3.0, 3.0, 20))
    for (double v : uniform_axis(-3.0, 3.0, 20))
      worst_violated =
          std::max(worst_violated, std::abs(coupling_residual(broken, u, v)));

  report(7, "coupling-identity", worst_valid < 1e-10 && worst_violated > 1e-3,
         text("valid %.3g (tol 1e-10), violated %.3g (want > 1e-3)",
              worst_valid, worst_violated));
}

void criterion_8_profile_structure() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coeff(0.5, 2.0);
  std::uniform_real_distribution<double> rate(0.4, 2.0);
  std::uniform_real_distribution<double> where(-2.0, 2.0);
  double worst = 0.0;
  for (SeparableKind kind :
       {SeparableKind::Exponential, SeparableKind::Trigonometric,
        SeparableKind::Polynomial}) {
    int counted = 0;
    while (counted < 100) {
      const double b = rate(rng);
      const ProfileFunction profile(
          kind, b, AxisCoefficients{coeff(rng), coeff(rng), coeff(rng)});
      const double t = where(rng);
      if (std::abs(profile.d1(t)) < 1e-3) continue;
      const double expected = kind == SeparableKind::Exponential ? b * b
                              : kind == SeparableKind::Trigonometric ? -b * b
                                                                     : 0.0;
      worst = std::max(worst,
                       std::abs(third_derivative_ratio(profile, t) - expected));
      ++counted;
    }
  }
  report(8, "profile-structure", worst < 1e-10,
         text("max ratio error %.3g (tol 1e-10)", worst));
}

void criterion_9_implicit_jets() {
  const CatalogEntry entry = *find_catalog_entry("example6.1");
  const ProfileTriple profiles = build_profiles(entry.coefficients);
  const NormOrder order(2);
  const std::array<int, 3> signs{1, 1, 1};
  const auto us = uniform_axis(-entry.window, entry.window, 13);
  const auto vs = uniform_axis(-entry.window, entry.window, 13);
  const DomainMask mask = positivity_domain(profiles, us, vs);
  double worst = 0.0;
  for (std::size_t i = 0; i < mask.rows; ++i)
    for (std::size_t j = 0; j < mask.cols; ++j) {
      if (!mask.at(i, j)) continue;
      const GraphJet2 jet = graph_jet_from_implicit(
          reconstruct_jets(profiles, signs, us[i], vs[j], order));
      worst = std::max(worst, std::abs(mean_curvature_graph(jet, order)));
    }
  const double pinned = coupling_residual(profiles, 2.0, -3.0);
  report(9, "implicit-jets", worst < 1e-8 && pinned == 0.0,
         text("max |H| %.3g (tol 1e-8), pinned point %.3g (want exact 0)",
              worst, pinned));
}

void criterion_10_oracle_order() {
  auto height = [](double u, double v) {
    return std::sin(u) * std::cos(v) + 0.3 * u * u * v + 0.05 * v * v * v;
  };
  auto position = [&](double u, double v) { return Vec3{u, v, height(u, v)}; };
  const double u = 0.7, v = 0.9;
  GraphJet2 jet;
  jet.fu = std::cos(u) * std::cos(v) + 0.6 * u * v;
  jet.fv = -std::sin(u) * std::sin(v) + 0.3 * u * u + 0.15 * v * v;
  jet.fuu = -std::sin(u) * std::cos(v) + 0.6 * v;
  jet.fuv = -std::cos(u) * std::sin(v) + 0.6 * u;
  jet.fvv = -std::sin(u) * std::cos(v) + 0.3 * v;
  const NormOrder order(2);
  const double analytic = mean_curvature_graph(jet, order);

  double errors[4];
  double step = 0.04;
  for (int i = 0; i < 4; ++i) {
    OracleConfig cfg;
    cfg.step = step;
    errors[i] =
        std::abs(mean_curvature_numeric(position, u, v, order, cfg) - analytic);
    step *= 0.5;
  }
  bool ordered = true;
  std::string orders;
  for (int i = 0; i + 1 < 4; ++i) {
    const double p = std::log2(errors[i] / errors[i + 1]);
    ordered = ordered && p > 1.7 && p < 2.3;
    orders += text("%.2f ", p);
  }
  report(10, "oracle-order", ordered,
         "observed orders " + orders + "(want 2.0 +/- 0.3)");
}

void criterion_11_full_verification() {
  const auto start = clock_type::now();
  const int code = run_cli("verify full");
  const double elapsed = seconds_since(start);
  report(11, "full-verification", code == 0 && elapsed < 300.0,
         text("exit %d (want 0), %.1fs (limit 300s)", code, elapsed));
}

}  // namespace

int main() {
  criterion_1_quartic_closed_form();
  criterion_2_euclidean_reduction();
  criterion_3_translation_certification();
  criterion_4_parametrization_equivalence();
  criterion_5_homothetical_certification();
  criterion_6_preset_pipeline();
  criterion_7_coupling_identity();
  criterion_8_profile_structure();
  criterion_9_implicit_jets();
  criterion_10_oracle_order();
  criterion_11_full_verification();
  if (failures != 0)
    std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
