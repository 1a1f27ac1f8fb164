#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <ostream>
#include <utility>
#include <vector>

#include "surf2m/curvature.hpp"
#include "surf2m/errors.hpp"
#include "surf2m/homothetical.hpp"
#include "surf2m/separable.hpp"
#include "surf2m/translation.hpp"

namespace surf2m {

struct MeshVertex {
  bool has_position = false;
  Vec3 position{};
  bool has_curvature = false;
  double curvature = 0.0;
};

/// Rectangular grid of plane points with the surface position wherever the
/// construction defines one and the analytic mean curvature wherever the
/// curvature formula is evaluable.
struct SurfaceMesh {
  std::vector<double> us;
  std::vector<double> vs;
  std::vector<MeshVertex> vertices;  // row-major over (us, vs)

  SurfaceMesh(std::vector<double> u_coords, std::vector<double> v_coords)
      : us(std::move(u_coords)),
        vs(std::move(v_coords)),
        vertices(us.size() * vs.size()) {}

  std::size_t rows() const { return us.size(); }
  std::size_t cols() const { return vs.size(); }
  MeshVertex& at(std::size_t i, std::size_t j) {
    return vertices[i * cols() + j];
  }
  const MeshVertex& at(std::size_t i, std::size_t j) const {
    return vertices[i * cols() + j];
  }

  /// Grid points whose analytic curvature was not evaluated.
  std::size_t skipped_vertices() const {
    std::size_t count = 0;
    for (const MeshVertex& v : vertices)
      if (!v.has_curvature) ++count;
    return count;
  }

  double max_abs_curvature() const {
    double worst = 0.0;
    for (const MeshVertex& v : vertices)
      if (v.has_curvature) worst = std::max(worst, std::abs(v.curvature));
    return worst;
  }

  bool any_position() const {
    for (const MeshVertex& v : vertices)
      if (v.has_position) return true;
    return false;
  }
};

/// Uniformly spaced coordinates including both endpoints.
inline std::vector<double> uniform_axis(double lo, double hi, std::size_t n) {
  if (n < 2 || !(lo < hi))
    raise(Errc::InvalidArgument, "uniform_axis: need lo < hi and n >= 2");
  std::vector<double> coords(n);
  for (std::size_t i = 0; i < n; ++i)
    coords[i] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  return coords;
}

inline SurfaceMesh build_translation_mesh(const TranslationSurface& surface,
                                          std::vector<double> us,
                                          std::vector<double> vs) {
  SurfaceMesh mesh(std::move(us), std::move(vs));
  const NormOrder order = surface.spec().order;

  // One inversion per grid line; everything per vertex is closed form.
  std::vector<double> s_params(mesh.rows()), t_params(mesh.cols());
  std::vector<unsigned char> s_ok(mesh.rows(), 0), t_ok(mesh.cols(), 0);
  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    try {
      s_params[i] = surface.parameter_u(mesh.us[i]);
      s_ok[i] = 1;
    } catch (const Error&) {
    }
  }
  for (std::size_t j = 0; j < mesh.cols(); ++j) {
    try {
      t_params[j] = surface.parameter_v(mesh.vs[j]);
      t_ok[j] = 1;
    } catch (const Error&) {
    }
  }

  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    if (!s_ok[i]) continue;
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      if (!t_ok[j]) continue;
      MeshVertex& vertex = mesh.at(i, j);
      vertex.position = {mesh.us[i], mesh.vs[j],
                         surface.height_from_parameters(s_params[i], t_params[j])};
      vertex.has_position = true;
      try {
        const GraphJet2 jet =
            surface.graph_jet_from_parameters(s_params[i], t_params[j]);
        vertex.curvature =
            mean_curvature_translation(jet.fu, jet.fuu, jet.fv, jet.fvv, order);
        vertex.has_curvature = true;
      } catch (const Error&) {
      }
    }
  }
  return mesh;
}

inline SurfaceMesh build_homothetical_mesh(const HomotheticalSurface& surface,
                                           std::vector<double> us,
                                           std::vector<double> vs) {
  SurfaceMesh mesh(std::move(us), std::move(vs));
  const NormOrder order = surface.spec().order;
  const bool swapped = surface.spec().swapped;

  // One inversion per profile-axis grid line.
  const std::vector<double>& profile_coords = swapped ? mesh.us : mesh.vs;
  std::vector<ProfileDerivatives> profile(profile_coords.size());
  std::vector<unsigned char> profile_ok(profile_coords.size(), 0);
  for (std::size_t k = 0; k < profile_coords.size(); ++k) {
    try {
      profile[k] = surface.profile_derivatives(profile_coords[k]);
      profile_ok[k] = 1;
    } catch (const Error&) {
    }
  }

  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    if (swapped && !profile_ok[i]) continue;
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      if (!swapped && !profile_ok[j]) continue;
      const std::size_t k = swapped ? i : j;
      const double linear = swapped ? mesh.vs[j] : mesh.us[i];
      const ProductJets jets = surface.assemble_jets(profile[k], linear);
      MeshVertex& vertex = mesh.at(i, j);
      vertex.position = {mesh.us[i], mesh.vs[j], jets.g * jets.h};
      vertex.has_position = true;
      try {
        vertex.curvature = mean_curvature_homothetical(
            jets.g, jets.gp, jets.gpp, jets.h, jets.hp, jets.hpp, order);
        vertex.has_curvature = true;
      } catch (const Error&) {
      }
    }
  }
  return mesh;
}

namespace detail {

// Cumulative integral of profile^-exponent along sorted coordinates, marching
// outward from the anchor and stopping at the first segment that leaves the
// region where the profile exceeds the margin. Coordinates beyond the stop
// stay invalid even if the profile turns positive again further out: they
// belong to a different connected patch.
struct AxisIntegralTable {
  std::vector<double> integral;
  std::vector<unsigned char> valid;
};

inline AxisIntegralTable march_axis_integrals(const ProfileFunction& profile,
                                              const std::vector<double>& coords,
                                              double anchor, double exponent,
                                              const QuadratureConfig& cfg,
                                              double margin) {
  AxisIntegralTable table;
  table.integral.assign(coords.size(), 0.0);
  table.valid.assign(coords.size(), 0);
  if (!(profile.value(anchor) > margin)) return table;

  auto integrand = [&](double t) {
    return std::pow(profile.value(t), -exponent);
  };
  auto segment_admissible = [&](double a, double b) {
    constexpr int kSamples = 16;
    for (int i = 0; i <= kSamples; ++i) {
      const double t = a + (b - a) * (static_cast<double>(i) / kSamples);
      if (!(profile.value(t) > margin)) return false;
    }
    return true;
  };

  const std::size_t split =
      std::lower_bound(coords.begin(), coords.end(), anchor) - coords.begin();
  double acc = 0.0;
  double prev = anchor;
  for (std::size_t k = split; k < coords.size(); ++k) {
    if (!segment_admissible(prev, coords[k])) break;
    acc += integrate(integrand, prev, coords[k], cfg).value;
    table.integral[k] = acc;
    table.valid[k] = 1;
    prev = coords[k];
  }
  acc = 0.0;
  prev = anchor;
  for (std::size_t k = split; k-- > 0;) {
    if (!segment_admissible(coords[k], prev)) break;
    acc -= integrate(integrand, coords[k], prev, cfg).value;
    table.integral[k] = acc;
    table.valid[k] = 1;
    prev = coords[k];
  }
  return table;
}

}  // namespace detail

/// Meshes the patch of a separable surface reachable from the anchor. The
/// required coordinates are cumulative one-dimensional integrals, so each of
/// the three axes is integrated once (the third over the sorted distinct
/// values of -u - v) instead of integrating three legs per vertex.
inline SurfaceMesh build_separable_mesh(const ProfileTriple& profiles,
                                        const std::array<int, 3>& signs,
                                        double anchor_u, double anchor_v,
                                        std::vector<double> us,
                                        std::vector<double> vs, NormOrder order,
                                        QuadratureConfig cfg = {},
                                        double margin = 1e-9) {
  detail::check_signs(signs);
  SurfaceMesh mesh(std::move(us), std::move(vs));
  const double exponent =
      static_cast<double>(order.root_index()) / order.two_m();

  std::vector<double> ws;
  ws.reserve(mesh.rows() * mesh.cols());
  for (double u : mesh.us)
    for (double v : mesh.vs) ws.push_back(-u - v);
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());

  const auto u_table = detail::march_axis_integrals(profiles[0], mesh.us,
                                                    anchor_u, exponent, cfg, margin);
  const auto v_table = detail::march_axis_integrals(profiles[1], mesh.vs,
                                                    anchor_v, exponent, cfg, margin);
  const auto w_table = detail::march_axis_integrals(
      profiles[2], ws, -anchor_u - anchor_v, exponent, cfg, margin);

  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    if (!u_table.valid[i]) continue;
    const double x = profiles[0].value(mesh.us[i]);
    const double xp = profiles[0].d1(mesh.us[i]);
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      if (!v_table.valid[j]) continue;
      // The repeated expression -u - v reproduces the stored key bit for bit.
      const double w = -mesh.us[i] - mesh.vs[j];
      const std::size_t k =
          std::lower_bound(ws.begin(), ws.end(), w) - ws.begin();
      if (!w_table.valid[k]) continue;
      MeshVertex& vertex = mesh.at(i, j);
      vertex.position = {signs[0] * u_table.integral[i],
                         signs[1] * v_table.integral[j],
                         signs[2] * w_table.integral[k]};
      vertex.has_position = true;
      try {
        vertex.curvature = mean_curvature_separable(
            x, xp, profiles[1].value(mesh.vs[j]), profiles[1].d1(mesh.vs[j]),
            profiles[2].value(w), profiles[2].d1(w), order);
        vertex.has_curvature = true;
      } catch (const Error&) {
      }
    }
  }
  return mesh;
}

/// Wavefront OBJ: one "v" line per defined position (1-based, row-major
/// order), and two triangular faces per grid cell whose four corners all
/// carry positions.
inline void write_obj(const SurfaceMesh& mesh, std::ostream& os) {
  std::vector<std::size_t> index(mesh.rows() * mesh.cols(), 0);
  std::size_t next = 1;
  char line[192];
  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      const MeshVertex& vertex = mesh.at(i, j);
      if (!vertex.has_position) continue;
      index[i * mesh.cols() + j] = next++;
      std::snprintf(line, sizeof line, "v %.17g %.17g %.17g\n",
                    vertex.position.x1, vertex.position.x2, vertex.position.x3);
      os << line;
    }
  }
  for (std::size_t i = 0; i + 1 < mesh.rows(); ++i) {
    for (std::size_t j = 0; j + 1 < mesh.cols(); ++j) {
      const std::size_t a = index[i * mesh.cols() + j];
      const std::size_t b = index[(i + 1) * mesh.cols() + j];
      const std::size_t c = index[(i + 1) * mesh.cols() + j + 1];
      const std::size_t d = index[i * mesh.cols() + j + 1];
      if (a == 0 || b == 0 || c == 0 || d == 0) continue;
      std::snprintf(line, sizeof line, "f %zu %zu %zu\nf %zu %zu %zu\n", a, b,
                    c, a, c, d);
      os << line;
    }
  }
}

/// CSV with one row per grid point: plane coordinates, position, and analytic
/// curvature, with nan in every column the construction did not define.
inline void write_csv(const SurfaceMesh& mesh, std::ostream& os) {
  os << "u,v,x1,x2,x3,H\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  char line[256];
  for (std::size_t i = 0; i < mesh.rows(); ++i) {
    for (std::size_t j = 0; j < mesh.cols(); ++j) {
      const MeshVertex& vertex = mesh.at(i, j);
      const Vec3 p = vertex.has_position ? vertex.position : Vec3{nan, nan, nan};
      const double h = vertex.has_curvature ? vertex.curvature : nan;
      std::snprintf(line, sizeof line,
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", mesh.us[i],
                    mesh.vs[j], p.x1, p.x2, p.x3, h);
      os << line;
    }
  }
}

}  // namespace surf2m
