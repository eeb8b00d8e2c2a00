#include <doctest.h>

#include <string>

#include "tripoly/svg.hpp"

using namespace tripoly;

namespace {
int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}
} // namespace

TEST_CASE("color map anchors and lookup") {
  const auto& map = svg::color_map();
  CHECK(map[0].hex() == "#440154");
  CHECK(map[255].hex() == "#fde725");
  CHECK(map[128].hex() == "#21918c"); // t = 128/255 just past the middle anchor
  CHECK(svg::map_value(-5.0, 0.0, 1.0).hex() == map[0].hex());
  CHECK(svg::map_value(5.0, 0.0, 1.0).hex() == map[255].hex());
  CHECK(svg::map_value(0.5, 0.0, 1.0).hex() == map[128].hex());
  CHECK(svg::vertex_count_tint(3).hex() == "#e65546");
  CHECK(svg::vertex_count_tint(6).hex() == "#f5aa28");
}

TEST_CASE("heatmap and cell renders are single-root SVG") {
  std::vector<svg::HeatmapPoint> pts{{0.25, 0.25, 1.0}, {0.25, 0.5, 2.0}, {0.5, 0.25, 3.0}};
  const std::string heat = svg::render_heatmap(pts, 0.25, "p3", false);
  CHECK(heat.rfind("<?xml", 0) == 0);
  CHECK(count(heat, "<svg") == 1);
  CHECK(count(heat, "</svg>") == 1);

  const std::string cells = svg::render_cells({sample_typical_cell(Weights(0.3, 0.3), 1)});
  CHECK(count(cells, "<svg") == 1);
  CHECK(count(cells, "<polygon") >= 1);
}
