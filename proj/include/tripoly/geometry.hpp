#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "tripoly/weights.hpp"

namespace tripoly {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt3 = std::numbers::sqrt3;

/// Geometric coincidence tolerance, in window units.
inline constexpr double kGeometryTolerance = 1e-9;
/// Closure tolerance for polygons built from side walks.
inline constexpr double kClosureTolerance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

/// Lexicographic (x, then y) order.
inline bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

/// One of the three line directions 0, pi/3, 2pi/3, stored as k in {0, 1, 2}.
class CanonicalAngle {
public:
  constexpr CanonicalAngle() = default;
  explicit CanonicalAngle(int index);

  /// Signed multiple of pi/3 in {-2, ..., 2}; negative values map to pi - |phi|.
  static CanonicalAngle from_sixth(int k);

  constexpr int index() const { return index_; }
  double radians() const { return index_ * kPi / 3.0; }
  Point direction() const { return {std::cos(radians()), std::sin(radians())}; }
  /// Unit normal: the direction rotated by +pi/2.
  Point normal() const { return {-std::sin(radians()), std::cos(radians())}; }

  friend constexpr bool operator==(CanonicalAngle, CanonicalAngle) = default;

private:
  int index_ = 0;
};

/// Maps phi in {0, +-pi/3, +-2pi/3} (within 1e-9) to its canonical direction.
/// Throws std::invalid_argument for any other angle.
CanonicalAngle normalize_angle(double phi);

/// p|sin(phi)| + q|sin(pi/3 - phi)| + (1-p-q)|sin(2pi/3 - phi)|.
double lambda_of(CanonicalAngle phi, const Weights& w);
/// sqrt(3) (p + q - p^2 - q^2 - pq).
double lambda_total(const Weights& w);

/// A line {x : <x, n_k> = offset} of direction family k.
struct DirectedLine {
  CanonicalAngle family;
  double offset = 0.0;
  int id = 0;

  Point direction() const { return family.direction(); }
  Point normal() const { return family.normal(); }
  /// Foot of the perpendicular from the origin.
  Point anchor() const { return offset * normal(); }
};

/// Intersection point of two lines from different families.
/// Throws std::invalid_argument for parallel (same-family) lines.
Point intersect(const DirectedLine& a, const DirectedLine& b);

/// A polygon side: length and signed walking direction in (-pi, pi].
struct Side {
  double length = 0.0;
  double direction = 0.0;
};

/// Planar polygon kept both as a vertex loop and as its side walk.
///
/// `from_walk` places the first vertex at `start` and appends one vertex per side
/// except the last, so a walk that does not close leaves a nonzero residual.
class Polygon {
public:
  Polygon() = default;

  static Polygon from_vertices(std::vector<Point> vertices);
  static Polygon from_walk(Point start, std::vector<Side> sides);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Side>& sides() const { return sides_; }
  std::size_t size() const { return vertices_.size(); }

  /// Signed shoelace area; positive for counterclockwise loops.
  double signed_area() const;
  double area() const { return std::abs(signed_area()); }

  /// True when every turn has the same strict orientation and the total
  /// turning is one full revolution.
  bool is_convex_simple() const;

  Polygon translated(Point offset) const;
  Polygon rotated(double angle) const;

private:
  std::vector<Point> vertices_;
  std::vector<Side> sides_;
};

/// max(|sum z_i sin(phi_i)|, |sum z_i cos(phi_i)|) over the polygon's sides.
double closing_residual(const Polygon& poly);

/// Vertex minimal in (x, then y) order. The polygon must be nonempty.
Point lex_min_vertex(const Polygon& poly);

} // namespace tripoly
