#pragma once

// Stroke-only SVG output. Coordinates are written with six fixed decimals
// (y flipped so the picture keeps the mathematical orientation), elements
// in layer order and then by id, so equal scenes give equal bytes.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rosette/design.hpp"
#include "rosette/error.hpp"
#include "rosette/geometry.hpp"
#include "rosette/packing.hpp"
#include "rosette/patch.hpp"

namespace rosette {

enum class Layer { Circles, Patch, Motif, RosetteLabels };

inline const char* to_string(Layer l) {
  switch (l) {
    case Layer::Circles: return "circles";
    case Layer::Patch: return "patch";
    case Layer::Motif: return "motif";
    case Layer::RosetteLabels: return "rosette-labels";
  }
  return "unknown";
}

struct StyleConfig {
  double stroke_width = 0.03;
  /// Keys: circle, cyclic, filler, gadget-pentagon, barrel-hexagon, motif, label.
  std::map<std::string, std::string> palette{{"circle", "#9e9e9e"},         {"cyclic", "#5c6bc0"},
                                             {"filler", "#ef9a9a"},         {"gadget-pentagon", "#81c784"},
                                             {"barrel-hexagon", "#ffb74d"}, {"motif", "#1a1a1a"},
                                             {"label", "#c62828"}};
  std::set<Layer> layers{Layer::Motif};
  double margin = 0.5;
  std::optional<std::string> background;
  /// Width of the document in user agent pixels; height follows the aspect.
  double pixel_width = 800.0;
};

/// What to draw. Any pointer may be null; layers without data are skipped.
struct Scene {
  const Packing* packing = nullptr;
  const Patch* patch = nullptr;
  const Design* design = nullptr;
};

/// Fixed six-decimal formatting without locale, "-0.000000" normalised.
inline std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  std::string s(buf, res.ptr);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace detail {

inline std::string color(const StyleConfig& style, const std::string& key) {
  auto it = style.palette.find(key);
  return it == style.palette.end() ? "#000000" : it->second;
}

struct Bounds {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  void add(Vec2 p, double r = 0.0) {
    x0 = std::min(x0, p.x - r);
    y0 = std::min(y0, p.y - r);
    x1 = std::max(x1, p.x + r);
    y1 = std::max(y1, p.y + r);
  }
  bool empty() const { return !(x0 <= x1); }
};

}  // namespace detail

inline std::string emit_svg(const Scene& scene, const StyleConfig& style) {
  if (!(style.stroke_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "stroke_width must be > 0");
  if (!(style.margin >= 0.0)) throw Error(ErrorCode::InvalidArgument, "margin must be >= 0");
  auto flip = [](Vec2 p) { return Vec2{p.x, -p.y}; };
  std::vector<LatticeOffset> copies{LatticeOffset{}};
  std::optional<Lattice> lattice;
  if (scene.design) {
    copies = scene.design->copies;
    lattice = scene.design->lattice;
  }

  std::vector<std::string> layers;
  detail::Bounds box;
  const double sw = style.stroke_width;

  if (style.layers.count(Layer::Circles) && scene.packing) {
    std::string g = "<g id=\"circles\" fill=\"none\" stroke=\"" + detail::color(style, "circle") +
                    "\" stroke-width=\"" + fmt(sw * 0.5) + "\">\n";
    for (LatticeOffset c : copies) {
      for (const auto& [id, circle] : scene.packing->circles) {
        const Vec2 p = flip(circle.center + lattice_shift(lattice, c));
        box.add(p, circle.radius);
        g += "<circle id=\"c" + std::to_string(id) + "\" cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"" +
             fmt(circle.radius) + "\"/>\n";
      }
    }
    layers.push_back(g + "</g>\n");
  }

  if (style.layers.count(Layer::Patch) && scene.patch) {
    std::string g = "<g id=\"patch\" fill=\"none\" stroke-width=\"" + fmt(sw * 0.5) + "\" stroke-linejoin=\"round\">\n";
    for (LatticeOffset c : copies) {
      const Vec2 shift = lattice_shift(lattice, c);
      for (std::size_t i = 0; i < scene.patch->polygons.size(); ++i) {
        const auto& poly = scene.patch->polygons[i];
        std::string pts;
        for (Vec2 v : scene.patch->coords(static_cast<int>(i))) {
          const Vec2 p = flip(v + shift);
          box.add(p);
          if (!pts.empty()) pts += " ";
          pts += fmt(p.x) + "," + fmt(p.y);
        }
        g += "<polygon id=\"p" + std::to_string(i) + "\" class=\"" + to_string(poly.role) + "\" stroke=\"" +
             detail::color(style, to_string(poly.role)) + "\" points=\"" + pts + "\"/>\n";
      }
    }
    layers.push_back(g + "</g>\n");
  }

  if (style.layers.count(Layer::Motif) && scene.design) {
    std::string g = "<g id=\"motif\" stroke=\"" + detail::color(style, "motif") + "\" stroke-width=\"" + fmt(sw) +
                    "\" stroke-linecap=\"round\">\n";
    for (const auto& [poly, s] : design_segments(*scene.design)) {
      const Vec2 a = flip(s.a), b = flip(s.b);
      box.add(a);
      box.add(b);
      g += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) + "\" y2=\"" + fmt(b.y) + "\"/>\n";
    }
    layers.push_back(g + "</g>\n");
  }

  if (style.layers.count(Layer::RosetteLabels) && scene.design && !scene.design->rosettes.empty()) {
    const double size = sw * 12.0;
    std::string g = "<g id=\"rosette-labels\" fill=\"" + detail::color(style, "label") + "\" font-family=\"sans-serif\" font-size=\"" +
                    fmt(size) + "\" text-anchor=\"middle\">\n";
    for (const auto& [circle, r] : scene.design->rosettes) {
      const Vec2 p = flip(r.center);
      box.add(p);
      g += "<text x=\"" + fmt(p.x) + "\" y=\"" + fmt(p.y + size * 0.35) + "\">" + std::to_string(r.order) + "</text>\n";
    }
    layers.push_back(g + "</g>\n");
  }

  if (box.empty()) throw Error(ErrorCode::EmptyScene, "nothing to draw in the selected layers");

  const double x = box.x0 - style.margin, y = box.y0 - style.margin;
  const double w = box.x1 - box.x0 + 2.0 * style.margin, h = box.y1 - box.y0 + 2.0 * style.margin;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" + fmt(x) + " " + fmt(y) + " " + fmt(w) +
         " " + fmt(h) + "\" width=\"" + fmt(style.pixel_width) + "\" height=\"" + fmt(style.pixel_width * h / w) + "\">\n";
  if (style.background) {
    out += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) + "\" fill=\"" +
           *style.background + "\"/>\n";
  }
  for (const auto& l : layers) out += l;
  out += "</svg>\n";
  return out;
}

inline std::string emit_svg(const Packing& packing, StyleConfig style = {}) {
  style.layers = {Layer::Circles};
  return emit_svg(Scene{&packing, nullptr, nullptr}, style);
}

inline std::string emit_svg(const Patch& patch, StyleConfig style = {}) {
  style.layers = {Layer::Patch};
  return emit_svg(Scene{nullptr, &patch, nullptr}, style);
}

inline std::string emit_svg(const Design& design, const StyleConfig& style = {}) {
  return emit_svg(Scene{nullptr, nullptr, &design}, style);
}

}  // namespace rosette
