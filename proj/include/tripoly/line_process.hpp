#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tripoly/geometry.hpp"
#include "tripoly/weights.hpp"

namespace tripoly {

/// Square observation window [-R, R]^2 with an inner counting box [-R f, R f]^2.
struct Window {
  double half_width = 60.0;
  double inner_fraction = 0.25;

  Window() = default;
  Window(double half_width, double inner_fraction = 0.25);

  double inner_half_width() const { return half_width * inner_fraction; }
  double inner_area() const { return 4.0 * inner_half_width() * inner_half_width(); }
  /// Offsets are sampled on [-R sqrt(2), R sqrt(2)] for every family.
  double offset_bound() const { return half_width * std::numbers::sqrt2; }
};

struct LineRealization {
  std::vector<DirectedLine> lines; // ids are 0..size()-1, grouped by family
  Weights weights;
  Window window;
  std::uint64_t seed = 0;
};

/// Samples the stationary Poisson line process with unit intensity and
/// directional weights (p, q, 1-p-q). Offsets of family k form a Poisson process
/// of rate w_k on [-R sqrt(2), R sqrt(2)]; each family draws from its own
/// substream of `seed`.
LineRealization sample_lines(const Weights& w, const Window& window, std::uint64_t seed);

/// Order-of-magnitude count of cells whose lex-min vertex falls in the inner box:
/// vertex intensity (sqrt(3)/2)(pq + qr + rp) times the inner-box area.
double expected_cells_in_box(const Weights& w, const Window& window);

/// {schema_version, seed, R, inner_fraction, weights:{p, q}, lines:[{family, offset}]}
nlohmann::json to_json(const LineRealization& realization);
LineRealization realization_from_json(const nlohmann::json& j);

} // namespace tripoly
