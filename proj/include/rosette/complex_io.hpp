#pragma once

// JSON file format for complexes.
//
//   { "topology": "disk" | "torus",
//     "vertices":  [ {"id": 1, "x": 0.0, "y": 0.0}, ... ],   // x, y optional
//     "triangles": [ [1, 2, 3], ... ],                        // counterclockwise
//     "wraps":     [ {"from": 1, "to": 2, "wx": 1, "wy": 0}, ... ],  // torus only
//     "gadgets":   [ {"kind": "square" | "bowtie", "centers": [..], "rim": [..]} ] }
//
// serialize_complex writes the canonical form (see canonical()) with a fixed
// key order and one array element per line, so equal complexes give equal
// bytes.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rosette/complex.hpp"
#include "rosette/error.hpp"

namespace rosette {

namespace detail {

using nlohmann::json;

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n' ? 1 : 0;
  return line;
}

inline void expect_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed,
                        std::initializer_list<const char*> required) {
  if (!obj.is_object()) throw ParseError(where, 0, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ParseError(where + "." + key, 0, "unknown field");
  }
  for (const char* r : required) {
    if (!obj.contains(r)) throw ParseError(where + "." + r, 0, "missing field");
  }
}

inline int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, 0, "expected an integer");
  return j.get<int>();
}

inline double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where, 0, "expected a number");
  return j.get<double>();
}

inline std::vector<int> get_int_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, 0, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

/// Converts already-parsed JSON to a Complex, checking structure only
/// (fields, types). Invariants are left to validate().
inline Complex complex_from_json(const nlohmann::json& doc) {
  using detail::expect_keys;
  using detail::get_int;
  expect_keys(doc, "$", {"topology", "vertices", "triangles", "wraps", "gadgets"},
              {"topology", "vertices", "triangles"});
  Complex c;
  const auto& topo = doc["topology"];
  if (topo == "disk") c.topology = Topology::Disk;
  else if (topo == "torus") c.topology = Topology::Torus;
  else throw ParseError("$.topology", 0, "expected \"disk\" or \"torus\"");

  const auto& verts = doc["vertices"];
  if (!verts.is_array()) throw ParseError("$.vertices", 0, "expected an array");
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const std::string where = "$.vertices[" + std::to_string(i) + "]";
    expect_keys(verts[i], where, {"id", "x", "y"}, {"id"});
    VertexRecord v;
    v.id = get_int(verts[i]["id"], where + ".id");
    const bool hx = verts[i].contains("x"), hy = verts[i].contains("y");
    if (hx != hy) throw ParseError(where, 0, "x and y must be given together");
    if (hx) v.hint = Vec2{detail::get_number(verts[i]["x"], where + ".x"),
                          detail::get_number(verts[i]["y"], where + ".y")};
    c.vertices.push_back(v);
  }

  const auto& tris = doc["triangles"];
  if (!tris.is_array()) throw ParseError("$.triangles", 0, "expected an array");
  for (std::size_t i = 0; i < tris.size(); ++i) {
    const std::string where = "$.triangles[" + std::to_string(i) + "]";
    const auto ids = detail::get_int_array(tris[i], where);
    if (ids.size() != 3) throw ParseError(where, 0, "a triangle has three vertex ids");
    c.triangles.push_back({ids[0], ids[1], ids[2]});
  }

  if (doc.contains("wraps")) {
    const auto& wraps = doc["wraps"];
    if (!wraps.is_array()) throw ParseError("$.wraps", 0, "expected an array");
    for (std::size_t i = 0; i < wraps.size(); ++i) {
      const std::string where = "$.wraps[" + std::to_string(i) + "]";
      expect_keys(wraps[i], where, {"from", "to", "wx", "wy"}, {"from", "to", "wx", "wy"});
      c.wraps.push_back({get_int(wraps[i]["from"], where + ".from"), get_int(wraps[i]["to"], where + ".to"),
                         {get_int(wraps[i]["wx"], where + ".wx"), get_int(wraps[i]["wy"], where + ".wy")}});
    }
  }

  if (doc.contains("gadgets")) {
    const auto& gadgets = doc["gadgets"];
    if (!gadgets.is_array()) throw ParseError("$.gadgets", 0, "expected an array");
    for (std::size_t i = 0; i < gadgets.size(); ++i) {
      const std::string where = "$.gadgets[" + std::to_string(i) + "]";
      expect_keys(gadgets[i], where, {"kind", "centers", "rim"}, {"kind", "centers", "rim"});
      GadgetAnnotation g;
      const auto& kind = gadgets[i]["kind"];
      if (kind == "square") g.kind = GadgetKind::Square;
      else if (kind == "bowtie") g.kind = GadgetKind::Bowtie;
      else throw ParseError(where + ".kind", 0, "expected \"square\" or \"bowtie\"");
      g.centers = detail::get_int_array(gadgets[i]["centers"], where + ".centers");
      g.rim = detail::get_int_array(gadgets[i]["rim"], where + ".rim");
      c.gadgets.push_back(std::move(g));
    }
  }
  return c;
}

/// Parses syntax and structure only; the result may violate invariants.
inline Complex parse_complex_unchecked(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", detail::line_of(text, e.byte), e.what());
  }
  return complex_from_json(doc);
}

/// Full parse: structure plus every Complex invariant. Returns the canonical
/// form. The first violation becomes the ParseError.
inline Complex parse_complex(std::string_view text) {
  Complex c = parse_complex_unchecked(text);
  const ValidationReport report = validate(c);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    throw ParseError(v.location, 0, v.message);
  }
  return canonical(std::move(c));
}

inline nlohmann::ordered_json complex_to_json(const Complex& complex) {
  const Complex c = canonical(complex);
  nlohmann::ordered_json doc;
  doc["topology"] = c.topology == Topology::Disk ? "disk" : "torus";
  doc["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : c.vertices) {
    nlohmann::ordered_json jv;
    jv["id"] = v.id;
    if (v.hint) {
      jv["x"] = v.hint->x;
      jv["y"] = v.hint->y;
    }
    doc["vertices"].push_back(jv);
  }
  doc["triangles"] = nlohmann::ordered_json::array();
  for (const auto& t : c.triangles) doc["triangles"].push_back({t[0], t[1], t[2]});
  if (c.topology == Topology::Torus) {
    doc["wraps"] = nlohmann::ordered_json::array();
    for (const auto& w : c.wraps) {
      nlohmann::ordered_json jw;
      jw["from"] = w.from;
      jw["to"] = w.to;
      jw["wx"] = w.offset.x;
      jw["wy"] = w.offset.y;
      doc["wraps"].push_back(jw);
    }
  }
  doc["gadgets"] = nlohmann::ordered_json::array();
  for (const auto& g : c.gadgets) {
    nlohmann::ordered_json jg;
    jg["kind"] = g.kind == GadgetKind::Square ? "square" : "bowtie";
    jg["centers"] = g.centers;
    jg["rim"] = g.rim;
    doc["gadgets"].push_back(jg);
  }
  return doc;
}

/// Writes a json document with top-level keys on their own lines and one
/// array element per line.
inline std::string dump_lines(const nlohmann::ordered_json& doc) {
  std::string out = "{\n";
  std::size_t k = 0;
  for (const auto& [key, value] : doc.items()) {
    out += "  " + nlohmann::ordered_json(key).dump() + ": ";
    if (value.is_array() && !value.empty()) {
      out += "[\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        out += "    " + value[i].dump();
        out += i + 1 < value.size() ? ",\n" : "\n";
      }
      out += "  ]";
    } else {
      out += value.dump();
    }
    out += ++k < doc.size() ? ",\n" : "\n";
  }
  out += "}\n";
  return out;
}

inline std::string serialize_complex(const Complex& c) { return dump_lines(complex_to_json(c)); }

}  // namespace rosette
