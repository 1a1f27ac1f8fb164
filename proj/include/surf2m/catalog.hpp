#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "surf2m/errors.hpp"
#include "surf2m/separable.hpp"

namespace surf2m {

/// A named separable coefficient set shipped with the tool, together with a
/// plane half-window suited to it.
struct CatalogEntry {
  std::string name;
  CoefficientSet coefficients;
  double window = 3.0;
};

/// Built-in coefficient sets: three admissible surfaces (one per family) and
/// one set that satisfies the algebraic constraints but has an empty
/// admissible region, kept for exercising the rejection path.
inline std::vector<CatalogEntry> separable_catalog() {
  std::vector<CatalogEntry> entries;
  const double pi = std::acos(-1.0);
  {
    CoefficientSet set;
    set.kind = SeparableKind::Polynomial;
    set.axis[0] = {-1.0, 0.0, 1.0};
    set.axis[1] = {-1.0, 0.0, 1.0};
    set.axis[2] = {2.0, 0.0, -0.5};
    entries.push_back({"example6.1", set, 3.0});
  }
  {
    CoefficientSet set;
    set.kind = SeparableKind::Exponential;
    set.rate = 1.0;
    set.axis[0] = {1.0, 0.0, 1.0};
    set.axis[1] = {1.0, 0.0, 1.0};
    set.axis[2] = {-1.0, 1.0, 0.0};
    entries.push_back({"example6.2", set, 3.0});
  }
  {
    CoefficientSet set;
    set.kind = SeparableKind::Trigonometric;
    set.rate = 1.0;
    set.axis[0] = {1.0, 0.0, 1.0};
    set.axis[1] = {1.0, 0.0, -1.0};
    set.axis[2] = {-0.5, 0.5, 0.0};
    entries.push_back({"example6.3", set, pi});
  }
  entries.push_back(
      {"example6.4",
       solve_trig_coefficients(1.0, 1.0, 1.0, pi / 4.0, pi / 4.0, 1.0), pi});
  return entries;
}

inline std::optional<CatalogEntry> find_catalog_entry(const std::string& name) {
  for (const CatalogEntry& entry : separable_catalog())
    if (entry.name == name) return entry;
  return std::nullopt;
}

inline SeparableKind separable_kind_from_string(const std::string& name) {
  if (name == "exponential") return SeparableKind::Exponential;
  if (name == "trigonometric") return SeparableKind::Trigonometric;
  if (name == "polynomial") return SeparableKind::Polynomial;
  raise(Errc::InvalidArgument,
        "unknown separable family \"" + name +
            "\"; expected exponential, trigonometric, or polynomial");
}

/// Parses a coefficient set from the JSON shape
/// {"case": <family>, "b": <rate>, "p": [..3..], "q": [..3..], "r": [..3..]}.
inline CoefficientSet coefficient_set_from_json(const nlohmann::json& j) try {
  CoefficientSet set;
  set.kind = separable_kind_from_string(j.at("case").get<std::string>());
  set.rate = j.value("b", 1.0);
  const nlohmann::json& p = j.at("p");
  const nlohmann::json& q = j.at("q");
  const nlohmann::json& r = j.at("r");
  for (int i = 0; i < 3; ++i)
    set.axis[i] = {p.at(i).get<double>(), q.at(i).get<double>(),
                   r.at(i).get<double>()};
  return set;
} catch (const nlohmann::json::exception& e) {
  raise(Errc::InvalidArgument,
        std::string("malformed coefficient json: ") + e.what());
}

inline nlohmann::ordered_json coefficient_set_to_json(
    const CoefficientSet& set) {
  nlohmann::ordered_json j;
  j["case"] = to_string(set.kind);
  j["b"] = set.rate;
  j["p"] = {set.axis[0].constant, set.axis[1].constant, set.axis[2].constant};
  j["q"] = {set.axis[0].first, set.axis[1].first, set.axis[2].first};
  j["r"] = {set.axis[0].second, set.axis[1].second, set.axis[2].second};
  return j;
}

}  // namespace surf2m
