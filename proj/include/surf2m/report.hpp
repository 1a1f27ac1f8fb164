#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "json.hpp"

namespace surf2m {

/// Summary of one surface generation run. Serialization is deterministic:
/// re-running the same construction yields byte-identical output except for
/// the wall-clock field.
struct RunReport {
  std::string family;
  int m = 1;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::size_t grid_rows = 0;
  std::size_t grid_cols = 0;
  double max_abs_h_analytic = 0.0;
  /// Largest stencil-oracle curvature over the sampled spots; absent when the
  /// oracle was not run.
  std::optional<double> max_abs_h_numeric;
  /// The six coefficient-constraint residuals; only separable runs have them.
  std::optional<std::array<double, 6>> constraint_residuals;
  std::size_t skipped_vertices = 0;
  bool domain_nonempty = false;
  double wall_ms = 0.0;
};

inline nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["family"] = report.family;
  j["m"] = report.m;
  j["params"] = report.params;
  j["grid"] = nlohmann::ordered_json::array(
      {report.grid_rows, report.grid_cols});
  j["max_abs_H_analytic"] = report.max_abs_h_analytic;
  if (report.max_abs_h_numeric)
    j["max_abs_H_numeric"] = *report.max_abs_h_numeric;
  else
    j["max_abs_H_numeric"] = nullptr;
  if (report.constraint_residuals)
    j["constraint_residuals"] = *report.constraint_residuals;
  else
    j["constraint_residuals"] = nullptr;
  j["skipped_vertices"] = report.skipped_vertices;
  j["domain_nonempty"] = report.domain_nonempty;
  j["wall_ms"] = report.wall_ms;
  return j;
}

}  // namespace surf2m
