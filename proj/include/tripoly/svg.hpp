#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tripoly/arrangement.hpp"
#include "tripoly/typical_cell.hpp"

namespace tripoly::svg {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  std::string hex() const;
};

/// 256-entry linear color map through five anchors (dark purple, blue, teal,
/// green, yellow). Entry i is the piecewise-linear blend at t = i / 255.
const std::array<Rgb, 256>& color_map();
/// Entry for value v on [lo, hi], clamped; index = round(255 (v - lo) / (hi - lo)).
Rgb map_value(double v, double lo, double hi);

/// Fill color of a cell with n = 3..6 vertices.
Rgb vertex_count_tint(int n);

/// Clipped line realization with interior faces tinted by vertex count.
std::string render_tessellation(const Arrangement& arrangement, const LineRealization& realization);

/// Sampled typical cells in a row of panels, each labelled with its case symbol.
std::string render_cells(const std::vector<CellSample>& cells);

struct HeatmapPoint {
  double p = 0.0;
  double q = 0.0;
  double value = 0.0;
};

/// Square cells of side `step` centred on grid points of the (p, q) simplex, the
/// simplex boundary, a color bar, and a marker on the largest or smallest value.
std::string render_heatmap(const std::vector<HeatmapPoint>& points, double step, const std::string& title,
                           bool mark_minimum);

} // namespace tripoly::svg
