#include <gtest/gtest.h>

#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "rosette/demos.hpp"
#include "rosette/pipeline.hpp"
#include "rosette/render.hpp"

using namespace rosette;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string read(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

PipelineConfig golden_config() {
  PipelineConfig c;
  c.patch.tau = 0.8;
  c.motif.theta = 2.0 * std::numbers::pi / 5.0;
  c.style.layers = {Layer::Circles, Layer::Patch, Layer::Motif, Layer::RosetteLabels};
  return c;
}

}  // namespace

TEST(Format, SixFixedDecimals) {
  EXPECT_EQ(fmt(1.0), "1.000000");
  EXPECT_EQ(fmt(-2.5), "-2.500000");
  EXPECT_EQ(fmt(1.0 / 3.0), "0.333333");
  EXPECT_EQ(fmt(-1e-9), "0.000000");
  EXPECT_EQ(fmt(-0.0), "0.000000");
  EXPECT_EQ(fmt(123456.7890125), "123456.789012");
}

TEST(Svg, SingleUnitCircle) {
  Packing p;
  p.circles[1] = Circle{{0, 0}, 1.0};
  StyleConfig style;
  style.margin = 0.25;
  const std::string svg = emit_svg(p, style);
  EXPECT_EQ(count(svg, "<circle "), 1u);
  EXPECT_NE(svg.find("viewBox=\"-1.250000 -1.250000 2.500000 2.500000\""), std::string::npos) << svg;
  EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Svg, LineCountEqualsSegmentCount) {
  for (const auto& name : demo_names()) {
    const Complex c = demo(name);
    const Packing pk = compute_packing(c);
    const Design d = assemble(build_patch(pk, c), pk, c);
    const std::string svg = emit_svg(d);
    EXPECT_EQ(count(svg, "<line "), d.segment_count()) << name;
  }
}

TEST(Svg, LayersInFixedOrder) {
  const auto r = run_pipeline(flower_of_flowers(), golden_config());
  const auto c = r.svg.find("id=\"circles\""), p = r.svg.find("id=\"patch\""), m = r.svg.find("id=\"motif\"");
  const auto l = r.svg.find("id=\"rosette-labels\"");
  ASSERT_NE(l, std::string::npos);
  EXPECT_LT(c, p);
  EXPECT_LT(p, m);
  EXPECT_LT(m, l);
  EXPECT_EQ(count(r.svg, "<polygon "), r.patch.polygons.size());
  EXPECT_EQ(count(r.svg, "<text "), r.design.rosettes.size());
}

TEST(Svg, PatchPolygonsCarryTheirRole) {
  const Complex c = grid_with_gadgets();
  const Packing pk = compute_packing(c);
  const std::string svg = emit_svg(build_patch(pk, c));
  for (const char* role : {"cyclic", "filler", "gadget-pentagon", "barrel-hexagon"}) {
    EXPECT_NE(svg.find(std::string("class=\"") + role + "\""), std::string::npos) << role;
  }
}

TEST(Svg, BackgroundAndStyle) {
  Packing p;
  p.circles[1] = Circle{{2, 3}, 0.5};
  StyleConfig style;
  style.background = "#fafafa";
  style.palette["circle"] = "#123456";
  const std::string svg = emit_svg(p, style);
  EXPECT_NE(svg.find("fill=\"#fafafa\""), std::string::npos);
  EXPECT_NE(svg.find("stroke=\"#123456\""), std::string::npos);
  // The y axis is flipped so the picture keeps the mathematical orientation.
  EXPECT_NE(svg.find("cx=\"2.000000\" cy=\"-3.000000\""), std::string::npos);
}

TEST(Svg, EmptySceneAndBadStyle) {
  try {
    emit_svg(Packing{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyScene);
  }
  Packing p;
  p.circles[1] = Circle{{0, 0}, 1.0};
  StyleConfig style;
  style.layers = {Layer::Motif};
  EXPECT_THROW(emit_svg(Scene{&p, nullptr, nullptr}, style), Error);
  style.layers = {Layer::Circles};
  style.stroke_width = 0.0;
  EXPECT_THROW(emit_svg(Scene{&p, nullptr, nullptr}, style), Error);
  style.stroke_width = 0.1;
  style.margin = -1.0;
  EXPECT_THROW(emit_svg(Scene{&p, nullptr, nullptr}, style), Error);
}

TEST(Svg, WellFormedMarkup) {
  const auto r = run_pipeline(demo("grid-gadgets"), golden_config());
  // Every element is self-closing or closed; groups balance.
  EXPECT_EQ(count(r.svg, "<g "), count(r.svg, "</g>"));
  EXPECT_EQ(count(r.svg, "<svg "), 1u);
  EXPECT_EQ(count(r.svg, "<text "), count(r.svg, "</text>"));
  const std::regex number("-?[0-9]+\\.[0-9]{6}");
  const std::regex attr(" (x1|y1|x2|y2|cx|cy|r)=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(r.svg.begin(), r.svg.end(), attr); it != std::sregex_iterator(); ++it) {
    ASSERT_TRUE(std::regex_match((*it)[2].str(), number)) << (*it)[0];
  }
}

TEST(Svg, ByteIdenticalAcrossRuns) {
  for (const auto& name : demo_names()) {
    EXPECT_EQ(run_pipeline(demo(name), golden_config()).svg, run_pipeline(demo(name), golden_config()).svg) << name;
  }
}

TEST(Svg, FlowerSixMatchesGolden) {
  const std::string golden = read(ROSETTE_SOURCE_DIR "/tests/golden/flower6.svg");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(run_pipeline(flower(6), golden_config()).svg, golden);
}
