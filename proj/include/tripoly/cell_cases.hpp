#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "tripoly/geometry.hpp"
#include "tripoly/weights.hpp"

namespace tripoly {

inline constexpr int kMaxFree = 4; // z_1..z_{n-2} for n <= 6

/// An integration limit: constant + sum_j coeff[j] z_{j+1}, or +infinity.
struct LimitExpr {
  bool infinite = false;
  double constant = 0.0;
  std::array<int, kMaxFree> coeff{};

  static LimitExpr zero() { return {}; }
  static LimitExpr inf() { return {true, 0.0, {}}; }
  static LimitExpr of(std::array<int, kMaxFree> c) { return {false, 0.0, c}; }

  double eval(std::span<const double> z) const;
  /// Whether the expression references z_{j+1}.
  bool uses(int j) const { return !infinite && coeff[j] != 0; }
};

enum class QuadSubtype { none, para, trap };

const char* to_string(QuadSubtype s);

/// One row of the typical-cell case tables.
///
/// The polygon is walked clockwise from its lowest vertex: side i (1..n-1) runs
/// along angle phi_i and side n along phi_0 - pi. Sides z_1..z_{n-2} are free
/// within [lower, upper]; z_{n-1} and z_n follow from the closing coefficients.
struct CaseSpec {
  std::string id;     // ASCII id: T1, Q4, P2.1, H1.2, ...
  std::string symbol; // table symbol: △₁, ▱₄, ⬠₂.₁, ⬡₁.₂, ...
  int n = 3;
  std::array<int, 6> sixths{}; // verbatim signed angles phi_0..phi_{n-1}, in units of pi/3
  std::array<LimitExpr, kMaxFree> lower{};
  std::array<LimitExpr, kMaxFree> upper{};
  std::array<std::array<int, kMaxFree>, 2> closing{}; // z_{n-1}, z_n
  QuadSubtype subtype = QuadSubtype::none;
  std::vector<int> order; // integration order of free variables, outermost first (0-based)

  int free_count() const { return n - 2; }
  double angle(int i) const { return sixths[i] * kPi / 3.0; }
};

/// All 20 rows: 2 triangles, 9 quadrilaterals, 7 pentagons, 2 hexagons.
const std::vector<CaseSpec>& all_cases();
/// Rows for one vertex count; throws ValidationError unless 3 <= n <= 6.
std::vector<CaseSpec> case_table(int n);
const CaseSpec& find_case(const std::string& id_or_symbol);

/// Walking directions of the n sides, strictly decreasing, in radians.
std::vector<double> side_directions(const CaseSpec& c);
/// lambda of each side's direction family.
std::vector<double> side_lambdas(const CaseSpec& c, const Weights& w);
/// prod_i G({phi_i}) over the n verbatim angles.
double angle_probability(const CaseSpec& c, const Weights& w);

/// General upper limit for z_i (1-based, 1 <= i <= n-2) given z_1..z_{i-1}:
/// -csc(phi_i - phi_0) sum_{j<i} z_j sin(phi_j - phi_0) when phi_i < phi_0,
/// otherwise +infinity.
double upper_limit(const CaseSpec& c, int i, std::span<const double> prefix);

/// All n side lengths from the free ones via the closing coefficients.
std::vector<double> complete_sides(const CaseSpec& c, std::span<const double> free);
/// z_{n-1}, z_n solved from the closing relations sum z_i (cos, sin)(d_i) = 0.
std::array<double, 2> solve_closing(const CaseSpec& c, std::span<const double> free);

/// Whether the free sides lie strictly inside the case's limit region.
bool in_region(const CaseSpec& c, std::span<const double> free);

/// Exponent coefficients a_j with density proportional to exp(-sum a_j z_j)
/// after substituting the closing relations.
std::array<double, kMaxFree> reduced_rates(const CaseSpec& c, const Weights& w);

/// (2/lambda)(sqrt3/2)^{n-1} exp(-1/2 sum_i z_i lambda(phi_i)); zero outside the region.
double density_value(const CaseSpec& c, std::span<const double> free, const Weights& w);

/// The polygon walked from `start` with the given n side lengths.
Polygon case_polygon(const CaseSpec& c, std::span<const double> sides, Point start = {});

} // namespace tripoly
