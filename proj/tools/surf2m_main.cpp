// Command-line front end: generates certified minimal-surface meshes,
// checks separable coefficient sets, and runs the self-verification battery.
//
// Exit codes, shared across subcommands where they apply:
//   0  success
//   1  a requested check or verification failed
//   2  invalid parameters, malformed input, or a failed self-certification
//   3  the admissible domain of a separable surface is empty
//   4  an output file could not be written

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "surf2m/catalog.hpp"
#include "surf2m/mesh.hpp"
#include "surf2m/report.hpp"
#include "surf2m/verify.hpp"

namespace {

using namespace surf2m;

struct GenArgs {
  std::string family;
  int m = 2;
  double a = 1.0;
  double b = 0.0;
  double c2 = 1.0;
  bool swapped = false;
  int grid = 50;
  double window = 0.0;  // 0 means "use the family default"
  std::string anchor;
  std::string signs = "+,+,+";
  std::string preset;
  std::string coeffs;
  std::string out_mesh;
  std::string out_report;
  bool oracle = false;
  double step = 1e-4;
  double h_threshold = 1e-7;
};

struct CheckArgs {
  std::string preset;
  std::string coeffs;
  double window = 0.0;
  double h_threshold = 1e-7;
};

struct VerifyArgs {
  std::string tier = "fast";
  bool mutate = false;
};

struct CoefficientSource {
  CoefficientSet set;
  std::optional<double> window;
  std::optional<std::string> name;
};

CoefficientSource load_coefficient_source(const std::string& preset,
                                          const std::string& path) {
  if (!preset.empty()) {
    const auto entry = find_catalog_entry(preset);
    if (!entry) raise(Errc::InvalidArgument, "unknown preset: " + preset);
    return {entry->coefficients, entry->window, entry->name};
  }
  std::ifstream in(path);
  if (!in)
    raise(Errc::InvalidArgument, "cannot read coefficient file: " + path);
  nlohmann::json parsed;
  try {
    in >> parsed;
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::InvalidArgument,
          std::string("malformed coefficient json: ") + e.what());
  }
  return {coefficient_set_from_json(parsed), std::nullopt, std::nullopt};
}

double default_separable_window(const CoefficientSet& set) {
  return set.kind == SeparableKind::Trigonometric
             ? std::numbers::pi / std::abs(set.rate)
             : 3.2;
}

std::array<int, 3> parse_signs(const std::string& text) {
  std::array<int, 3> signs{};
  std::stringstream stream(text);
  std::string token;
  int count = 0;
  while (std::getline(stream, token, ',')) {
    token.erase(std::remove(token.begin(), token.end(), ' '), token.end());
    if (count >= 3) raise(Errc::InvalidArgument, "signs: expected 3 entries");
    if (token == "+" || token == "+1" || token == "1")
      signs[count] = 1;
    else if (token == "-" || token == "-1")
      signs[count] = -1;
    else
      raise(Errc::InvalidArgument, "signs: entries must be '+' or '-'");
    ++count;
  }
  if (count != 3) raise(Errc::InvalidArgument, "signs: expected 3 entries");
  return signs;
}

std::pair<double, double> parse_anchor(const std::string& text) {
  double u = 0.0, v = 0.0;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%lf , %lf %c", &u, &v, &trailing) != 2)
    raise(Errc::InvalidArgument, "anchor: expected 'u,v'");
  return {u, v};
}

void validate_mesh_extension(const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext != ".obj" && ext != ".csv")
    raise(Errc::InvalidArgument,
          "out-mesh: unsupported extension '" + ext + "' (use .obj or .csv)");
}

int write_mesh_file(const SurfaceMesh& mesh, const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", path.c_str());
    return 4;
  }
  if (ext == ".obj")
    write_obj(mesh, out);
  else
    write_csv(mesh, out);
  out.flush();
  if (!out) {
    std::fprintf(stderr, "error: write to '%s' failed\n", path.c_str());
    return 4;
  }
  return 0;
}

int emit_report(const RunReport& report, const std::string& path) {
  const std::string text = to_json(report).dump(2) + "\n";
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", path.c_str());
    return 4;
  }
  out << text;
  out.flush();
  if (!out) {
    std::fprintf(stderr, "error: write to '%s' failed\n", path.c_str());
    return 4;
  }
  return 0;
}

void reject_foreign_flags(const CLI::App& sub, const std::string& family) {
  auto used = [&sub](const char* name) { return sub.count(name) > 0; };
  if (family == "separable") {
    for (const char* flag : {"--a", "--b", "--c2", "--swapped"})
      if (used(flag))
        raise(Errc::InvalidArgument,
              std::string(flag) + " does not apply to the separable family");
    if (used("--preset") == used("--coeffs"))
      raise(Errc::InvalidArgument,
            "separable surfaces need exactly one of --preset / --coeffs");
    return;
  }
  for (const char* flag : {"--preset", "--coeffs", "--anchor", "--signs"})
    if (used(flag))
      raise(Errc::InvalidArgument,
            std::string(flag) + " applies only to the separable family");
  if (family == "translation")
    for (const char* flag : {"--b", "--c2", "--swapped"})
      if (used(flag))
        raise(Errc::InvalidArgument,
              std::string(flag) + " applies only to the homothetical family");
}

int run_gen(const GenArgs& args, const CLI::App& sub) {
  const auto start = std::chrono::steady_clock::now();
  reject_foreign_flags(sub, args.family);
  if (args.grid < 2)
    raise(Errc::InvalidArgument, "grid must have at least 2 lines per axis");
  if (!args.out_mesh.empty()) validate_mesh_extension(args.out_mesh);
  const NormOrder order(args.m);

  RunReport report;
  report.family = args.family;
  report.m = args.m;
  std::optional<SurfaceMesh> mesh;

  if (args.family == "translation") {
    if (args.a == 0.0)
      raise(Errc::InvalidArgument, "separation constant must be nonzero");
    TranslationSpec spec;
    spec.order = order;
    spec.separation_constant = args.a;
    const TranslationSurface surface(spec);
    const double cap = surface.plane_limit() * (1.0 - 1e-3);
    const double window = args.window > 0.0 ? std::min(args.window, cap)
                                            : 0.9 * surface.plane_limit();
    const auto axis =
        uniform_axis(-window, window, static_cast<std::size_t>(args.grid));
    mesh = build_translation_mesh(surface, axis, axis);
    report.params["a"] = args.a;
    if (args.oracle) {
      TranslationSpec tight = spec;
      tight.quadrature.abs_tol = 3e-14;
      tight.quadrature.rel_tol = 3e-14;
      tight.inversion.tolerance = 1e-14;
      const TranslationSurface probe(tight);
      const double s_limit = probe.parameter_u(0.9 * window);
      const double t_limit = probe.parameter_v(0.9 * window);
      auto position = [&probe](double s, double t) {
        return probe.point_from_parameters(s, t);
      };
      OracleConfig cfg;
      cfg.step = args.step;
      const double fractions[5][2] = {
          {0.8, -0.6}, {-0.7, 0.5}, {0.6, 0.9}, {-0.9, -0.4}, {0.45, 0.7}};
      double worst = 0.0;
      for (const auto& f : fractions)
        worst = std::max(
            worst, std::abs(mean_curvature_numeric(
                       position, f[0] * s_limit, f[1] * t_limit, order, cfg)));
      report.max_abs_h_numeric = worst;
    }
  } else if (args.family == "homothetical") {
    if (args.a == 0.0) raise(Errc::InvalidArgument, "slope must be nonzero");
    if (args.c2 == 0.0) raise(Errc::InvalidArgument, "rate must be nonzero");
    HomotheticalSpec spec;
    spec.order = order;
    spec.slope = args.a;
    spec.offset = args.b;
    spec.rate = args.c2;
    spec.swapped = args.swapped;
    const HomotheticalSurface surface(spec);
    const double cap = surface.plane_limit() * (1.0 - 1e-3);
    const double profile_window = args.window > 0.0
                                      ? std::min(args.window, cap)
                                      : 0.9 * surface.plane_limit();
    const double linear_window =
        args.window > 0.0 ? args.window : 0.9 * surface.plane_limit();
    const auto n = static_cast<std::size_t>(args.grid);
    const auto linear_axis = uniform_axis(-linear_window, linear_window, n);
    const auto profile_axis = uniform_axis(-profile_window, profile_window, n);
    mesh = spec.swapped
               ? build_homothetical_mesh(surface, profile_axis, linear_axis)
               : build_homothetical_mesh(surface, linear_axis, profile_axis);
    report.params["a"] = args.a;
    report.params["b"] = args.b;
    report.params["c2"] = args.c2;
    report.params["swapped"] = args.swapped;
    if (args.oracle) {
      HomotheticalSpec tight = spec;
      tight.quadrature.abs_tol = 3e-14;
      tight.quadrature.rel_tol = 3e-14;
      tight.inversion.tolerance = 1e-14;
      const HomotheticalSurface probe(tight);
      auto position = [&probe](double u, double v) { return probe.point(u, v); };
      OracleConfig cfg;
      cfg.step = args.step;
      const double linear_fracs[5] = {-0.7, 0.45, -0.3, 0.6, 0.25};
      const double profile_fracs[5] = {0.4, -0.55, 0.65, -0.35, 0.5};
      double worst = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double linear = linear_fracs[i] * linear_window;
        const double profile = profile_fracs[i] * profile_window;
        if (std::abs(spec.slope * linear + spec.offset) <= 0.1) continue;
        const double u = spec.swapped ? profile : linear;
        const double v = spec.swapped ? linear : profile;
        worst = std::max(
            worst, std::abs(mean_curvature_numeric(position, u, v, order, cfg)));
      }
      report.max_abs_h_numeric = worst;
    }
  } else {  // separable
    const CoefficientSource source =
        load_coefficient_source(args.preset, args.coeffs);
    const std::array<double, 6> residuals =
        constraint_residuals(source.set);
    report.constraint_residuals = residuals;
    double worst_residual = 0.0;
    for (double r : residuals) worst_residual = std::max(worst_residual, std::abs(r));
    if (worst_residual > args.h_threshold) {
      std::fprintf(stderr,
                   "error: coefficient constraints violated "
                   "(max residual %.3g > %.3g)\n",
                   worst_residual, args.h_threshold);
      return 2;
    }
    const double window = args.window > 0.0
                              ? args.window
                              : source.window.value_or(
                                    default_separable_window(source.set));
    const ProfileTriple profiles = build_profiles(source.set);
    const auto n = static_cast<std::size_t>(args.grid);
    const auto us = uniform_axis(-window, window, n);
    const auto vs = uniform_axis(-window, window, n);
    const DomainMask mask = positivity_domain(profiles, us, vs);
    if (!mask.any_inside) {
      std::fprintf(stderr,
                   "error: the admissible domain is empty on the requested "
                   "grid; no surface patch exists\n");
      return 3;
    }
    const std::array<int, 3> signs = parse_signs(args.signs);
    constexpr double kMargin = 1e-9;
    auto admissible = [&](double u, double v) {
      return profiles[0].value(u) > kMargin && profiles[1].value(v) > kMargin &&
             profiles[2].value(-u - v) > kMargin;
    };
    double anchor_u = 0.0, anchor_v = 0.0;
    if (!args.anchor.empty()) {
      std::tie(anchor_u, anchor_v) = parse_anchor(args.anchor);
      if (!admissible(anchor_u, anchor_v))
        raise(Errc::InvalidArgument,
              "anchor lies outside the admissible domain");
    } else {
      // Default anchor: centroid of the admissible cells, falling back to the
      // admissible grid point nearest that centroid when the centroid itself
      // is outside (the domain can be a union of separated patches).
      double cu = 0.0, cv = 0.0;
      std::size_t inside = 0;
      for (std::size_t i = 0; i < mask.rows; ++i)
        for (std::size_t j = 0; j < mask.cols; ++j)
          if (mask.at(i, j)) {
            cu += us[i];
            cv += vs[j];
            ++inside;
          }
      cu /= static_cast<double>(inside);
      cv /= static_cast<double>(inside);
      if (admissible(cu, cv)) {
        anchor_u = cu;
        anchor_v = cv;
      } else {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < mask.rows; ++i)
          for (std::size_t j = 0; j < mask.cols; ++j) {
            if (!mask.at(i, j)) continue;
            const double d =
                (us[i] - cu) * (us[i] - cu) + (vs[j] - cv) * (vs[j] - cv);
            if (d < best) {
              best = d;
              anchor_u = us[i];
              anchor_v = vs[j];
            }
          }
      }
    }
    mesh = build_separable_mesh(profiles, signs, anchor_u, anchor_v, us, vs,
                                order);
    if (!mesh->any_position()) {
      std::fprintf(stderr,
                   "error: no grid vertex is reachable from the anchor "
                   "(%g, %g) inside the admissible domain\n",
                   anchor_u, anchor_v);
      return 3;
    }
    if (source.name) report.params["preset"] = *source.name;
    const nlohmann::ordered_json coefficient_json =
        coefficient_set_to_json(source.set);
    for (const auto& [key, value] : coefficient_json.items())
      report.params[key] = value;
    report.params["anchor"] =
        nlohmann::ordered_json::array({anchor_u, anchor_v});
    report.params["signs"] =
        nlohmann::ordered_json::array({signs[0], signs[1], signs[2]});
    report.params["window"] = window;
    if (args.oracle) {
      std::vector<std::pair<std::size_t, std::size_t>> interior;
      for (std::size_t i = 1; i + 1 < mesh->rows(); ++i)
        for (std::size_t j = 1; j + 1 < mesh->cols(); ++j) {
          bool surrounded = true;
          for (int di = -1; di <= 1 && surrounded; ++di)
            for (int dj = -1; dj <= 1 && surrounded; ++dj)
              surrounded = mesh->at(i + di, j + dj).has_position;
          if (surrounded) interior.emplace_back(i, j);
        }
      if (!interior.empty()) {
        QuadratureConfig tight;
        tight.abs_tol = 3e-14;
        tight.rel_tol = 3e-14;
        auto position = [&](double u, double v) {
          return reconstruct_point(profiles, signs, anchor_u, anchor_v, u, v,
                                   order, tight);
        };
        OracleConfig cfg;
        cfg.step = args.step;
        const std::size_t stride =
            std::max<std::size_t>(1, interior.size() / 5);
        double worst = 0.0;
        bool sampled = false;
        int taken = 0;
        for (std::size_t k = 0; k < interior.size() && taken < 5;
             k += stride, ++taken) {
          const auto [i, j] = interior[k];
          try {
            worst = std::max(worst, std::abs(mean_curvature_numeric(
                                        position, us[i], vs[j], order, cfg)));
            sampled = true;
          } catch (const Error&) {
            continue;  // a stencil leg left the domain; skip this spot
          }
        }
        if (sampled) report.max_abs_h_numeric = worst;
      }
    }
  }

  report.grid_rows = mesh->rows();
  report.grid_cols = mesh->cols();
  report.max_abs_h_analytic = mesh->max_abs_curvature();
  report.skipped_vertices = mesh->skipped_vertices();
  report.domain_nonempty = mesh->any_position();
  if (report.max_abs_h_analytic > args.h_threshold) {
    std::fprintf(stderr,
                 "error: self-certification failed "
                 "(max |H| %.3g > %.3g)\n",
                 report.max_abs_h_analytic, args.h_threshold);
    return 2;
  }

  if (!args.out_mesh.empty()) {
    const int status = write_mesh_file(*mesh, args.out_mesh);
    if (status != 0) return status;
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return emit_report(report, args.out_report);
}

int run_check(const CheckArgs& args) {
  const CoefficientSource source =
      load_coefficient_source(args.preset, args.coeffs);
  const std::array<double, 6> residuals = constraint_residuals(source.set);
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, std::abs(r));
  const double window =
      args.window > 0.0
          ? args.window
          : source.window.value_or(default_separable_window(source.set));
  const DomainMask mask =
      positivity_domain(build_profiles(source.set),
                        uniform_axis(-window, window, 41),
                        uniform_axis(-window, window, 41));
  const bool pass = worst <= args.h_threshold && mask.any_inside;
  nlohmann::ordered_json summary;
  summary["max_constraint_residual"] = worst;
  summary["domain_nonempty"] = mask.any_inside;
  summary["pass"] = pass;
  std::printf("%s\n", summary.dump(2).c_str());
  return pass ? 0 : 1;
}

int run_verify(const VerifyArgs& args) {
  VerifyOptions options;
  options.tier =
      args.tier == "full" ? VerifyTier::Full : VerifyTier::Fast;
  options.mutate = args.mutate;
  const std::vector<CheckResult> results = run_verification(options);
  bool all_passed = true;
  for (const CheckResult& result : results) {
    std::printf("%s %-26s %s\n", result.passed ? "PASS" : "FAIL",
                result.name.c_str(), result.detail.c_str());
    all_passed = all_passed && result.passed;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Minimal surfaces in three-space under an even-degree norm: "
      "mesh generation, coefficient checking, and self-verification"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a surface mesh and certify its mean curvature");
  gen->add_option("--family", gen_args.family,
                  "surface family: translation | homothetical | separable")
      ->required()
      ->check(CLI::IsMember({"translation", "homothetical", "separable"}));
  gen->add_option("--m", gen_args.m, "norm half-degree (integer >= 1)");
  gen->add_option("--a", gen_args.a,
                  "separation constant (translation) or factor slope "
                  "(homothetical)");
  gen->add_option("--b", gen_args.b, "linear factor offset (homothetical)");
  gen->add_option("--c2", gen_args.c2, "profile rate constant (homothetical)");
  gen->add_flag("--swapped", gen_args.swapped,
                "exchange the factor roles of the two plane axes");
  gen->add_option("--grid", gen_args.grid, "grid lines per axis");
  gen->add_option("--window", gen_args.window,
                  "half-width of the sampled plane window (0 = default)");
  gen->add_option("--anchor", gen_args.anchor,
                  "separable base point 'u,v' (default: domain centroid)");
  gen->add_option("--signs", gen_args.signs,
                  "separable axis signs, e.g. '+,+,-'");
  gen->add_option("--preset", gen_args.preset,
                  "named coefficient set from the catalog");
  gen->add_option("--coeffs", gen_args.coeffs,
                  "path to a coefficient JSON file");
  gen->add_option("--out-mesh", gen_args.out_mesh,
                  "mesh output path (.obj or .csv)");
  gen->add_option("--out-report", gen_args.out_report,
                  "report JSON path (default: print to stdout)");
  gen->add_flag("--oracle", gen_args.oracle,
                "also certify sample spots with the finite-difference oracle");
  gen->add_option("--step", gen_args.step, "oracle finite-difference step");
  gen->add_option("--h-threshold", gen_args.h_threshold,
                  "largest acceptable |H| for self-certification");

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "Check a separable coefficient set without meshing");
  CLI::Option_group* source =
      check->add_option_group("source", "coefficient source");
  source->add_option("--preset", check_args.preset,
                     "named coefficient set from the catalog");
  source->add_option("--coeffs", check_args.coeffs,
                     "path to a coefficient JSON file");
  source->require_option(1);
  check->add_option("--window", check_args.window,
                    "half-width of the positivity scan window (0 = default)");
  check->add_option("--h-threshold", check_args.h_threshold,
                    "largest acceptable constraint residual");

  VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "Run the library self-check battery");
  verify->add_option("tier", verify_args.tier, "fast (default) or full")
      ->check(CLI::IsMember({"fast", "full"}));
  verify->add_flag("--mutate", verify_args.mutate)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args, *gen);
    if (check->parsed()) return run_check(check_args);
    return run_verify(verify_args);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
