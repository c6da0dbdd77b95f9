#pragma once

// JSON documents for the intermediate artifacts: packing, patch, design.

#include <string>

#include <nlohmann/json.hpp>

#include "rosette/complex.hpp"
#include "rosette/complex_io.hpp"
#include "rosette/csm.hpp"
#include "rosette/design.hpp"
#include "rosette/error.hpp"
#include "rosette/packing.hpp"
#include "rosette/patch.hpp"

namespace rosette {

namespace detail {

inline nlohmann::ordered_json xy(Vec2 p) { return nlohmann::ordered_json::array({p.x, p.y}); }

inline nlohmann::ordered_json lattice_json(const Lattice& l) {
  return nlohmann::ordered_json::array({xy(l[0]), xy(l[1])});
}

/// Infinite or NaN numbers have no JSON form; they become null.
inline nlohmann::ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json();
}

}  // namespace detail

inline nlohmann::ordered_json packing_to_json(const Packing& p) {
  nlohmann::ordered_json doc;
  doc["topology"] = p.topology == Topology::Disk ? "disk" : "torus";
  doc["circles"] = nlohmann::ordered_json::array();
  for (const auto& [id, c] : p.circles) {
    doc["circles"].push_back({{"id", id}, {"x", c.center.x}, {"y", c.center.y}, {"r", c.radius}});
  }
  if (p.lattice) doc["lattice"] = detail::lattice_json(*p.lattice);
  return doc;
}

inline nlohmann::ordered_json patch_to_json(const Patch& patch) {
  nlohmann::ordered_json doc;
  doc["tau"] = patch.params.tau;
  doc["tau_mode"] = patch.params.tau_mode == TauMode::Scale ? "scale" : "offset";
  doc["polygons"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < patch.polygons.size(); ++i) {
    const auto& poly = patch.polygons[i];
    nlohmann::ordered_json jp;
    jp["id"] = i;
    jp["role"] = to_string(poly.role);
    if (poly.role == PolygonRole::Cyclic) jp["circle_id"] = poly.circle;
    jp["points"] = nlohmann::ordered_json::array();
    for (Vec2 v : patch.coords(static_cast<int>(i))) jp["points"].push_back(detail::xy(v));
    doc["polygons"].push_back(jp);
  }
  if (patch.lattice) doc["lattice"] = detail::lattice_json(*patch.lattice);
  return doc;
}

inline nlohmann::ordered_json design_to_json(const Design& d) {
  nlohmann::ordered_json doc;
  doc["segments"] = nlohmann::ordered_json::array();
  for (const auto& [poly, s] : design_segments(d)) {
    doc["segments"].push_back({{"polygon", poly}, {"x1", s.a.x}, {"y1", s.a.y}, {"x2", s.b.x}, {"y2", s.b.y}});
  }
  doc["rosettes"] = nlohmann::ordered_json::array();
  for (const auto& [id, r] : d.rosettes) {
    doc["rosettes"].push_back({{"circle", id}, {"order", r.order}, {"center", detail::xy(r.center)}});
  }
  doc["kept"] = d.kept;
  doc["trim_depth"] = d.trim_depth;
  doc["fixed_hexagons"] = d.fixed_hexagons;
  doc["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : d.failures) {
    doc["failures"].push_back({{"polygon", f.polygon}, {"code", to_string(f.code)}, {"message", f.message}});
  }
  doc["notes"] = d.notes;
  if (d.lattice) doc["lattice"] = detail::lattice_json(*d.lattice);
  return doc;
}

inline nlohmann::ordered_json sweep_to_json(const TauSweep& s) {
  nlohmann::ordered_json doc;
  doc["best_tau"] = s.best_tau;
  doc["best_error"] = detail::finite_or_null(s.best_error);
  doc["curve"] = nlohmann::ordered_json::array();
  for (const auto& [tau, err] : s.curve) doc["curve"].push_back({{"tau", tau}, {"error", detail::finite_or_null(err)}});
  return doc;
}

inline nlohmann::ordered_json report_to_json(const ValidationReport& r) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    out.push_back({{"kind", to_string(v.kind)}, {"location", v.location}, {"message", v.message}});
  }
  return out;
}

}  // namespace rosette
