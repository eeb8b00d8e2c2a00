#include "tripoly/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tripoly {

CanonicalAngle::CanonicalAngle(int index) : index_(index) {
  if (index < 0 || index > 2) throw std::invalid_argument("canonical angle index must be 0, 1 or 2");
}

CanonicalAngle CanonicalAngle::from_sixth(int k) {
  if (k < -2 || k > 2) throw std::invalid_argument("signed angle must be a multiple of pi/3 in [-2pi/3, 2pi/3]");
  return CanonicalAngle(k >= 0 ? k : k + 3);
}

CanonicalAngle normalize_angle(double phi) {
  const double sixths = phi / (kPi / 3.0);
  const double k = std::round(sixths);
  if (std::abs(sixths - k) > kGeometryTolerance || k < -2 || k > 2) {
    throw std::invalid_argument("angle " + std::to_string(phi) + " is not one of 0, +-pi/3, +-2pi/3");
  }
  return CanonicalAngle::from_sixth(static_cast<int>(k));
}

double lambda_of(CanonicalAngle phi, const Weights& w) {
  const double a = phi.radians();
  return w.p() * std::abs(std::sin(a)) + w.q() * std::abs(std::sin(kPi / 3.0 - a)) +
         w.r() * std::abs(std::sin(2.0 * kPi / 3.0 - a));
}

double lambda_total(const Weights& w) {
  const double p = w.p();
  const double q = w.q();
  return kSqrt3 * (p + q - p * p - q * q - p * q);
}

Point intersect(const DirectedLine& a, const DirectedLine& b) {
  if (a.family == b.family) {
    throw std::invalid_argument("lines " + std::to_string(a.id) + " and " + std::to_string(b.id) +
                                " are parallel");
  }
  // Solve <x, n_a> = c_a, <x, n_b> = c_b by Cramer's rule.
  const Point na = a.normal();
  const Point nb = b.normal();
  const double det = cross(na, nb);
  return {(a.offset * nb.y - b.offset * na.y) / det, (na.x * b.offset - nb.x * a.offset) / det};
}

Polygon Polygon::from_vertices(std::vector<Point> vertices) {
  Polygon poly;
  const std::size_t n = vertices.size();
  poly.sides_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point d = vertices[(i + 1) % n] - vertices[i];
    poly.sides_.push_back({norm(d), std::atan2(d.y, d.x)});
  }
  poly.vertices_ = std::move(vertices);
  return poly;
}

Polygon Polygon::from_walk(Point start, std::vector<Side> sides) {
  Polygon poly;
  poly.vertices_.reserve(sides.size());
  Point v = start;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    poly.vertices_.push_back(v);
    v = v + sides[i].length * Point{std::cos(sides[i].direction), std::sin(sides[i].direction)};
  }
  poly.sides_ = std::move(sides);
  return poly;
}

double Polygon::signed_area() const {
  double twice = 0.0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(vertices_[i], vertices_[(i + 1) % n]);
  return 0.5 * twice;
}

bool Polygon::is_convex_simple() const {
  const std::size_t n = sides_.size();
  if (n < 3) return false;
  int sign = 0;
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(sides_[i].length > 0.0)) return false;
    const double a = sides_[i].direction;
    const double b = sides_[(i + 1) % n].direction;
    double turn = std::remainder(b - a, 2.0 * kPi);
    if (std::abs(turn) < kGeometryTolerance || std::abs(std::abs(turn) - kPi) < kGeometryTolerance) return false;
    const int s = turn > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
    turning += turn;
  }
  return std::abs(std::abs(turning) - 2.0 * kPi) < 1e-6;
}

Polygon Polygon::translated(Point offset) const {
  Polygon poly = *this;
  for (auto& v : poly.vertices_) v = v + offset;
  return poly;
}

Polygon Polygon::rotated(double angle) const {
  Polygon poly = *this;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  for (auto& v : poly.vertices_) v = {c * v.x - s * v.y, s * v.x + c * v.y};
  for (auto& side : poly.sides_) side.direction = std::remainder(side.direction + angle, 2.0 * kPi);
  return poly;
}

double closing_residual(const Polygon& poly) {
  double sx = 0.0;
  double sy = 0.0;
  for (const Side& side : poly.sides()) {
    sx += side.length * std::cos(side.direction);
    sy += side.length * std::sin(side.direction);
  }
  return std::max(std::abs(sx), std::abs(sy));
}

Point lex_min_vertex(const Polygon& poly) {
  const auto& v = poly.vertices();
  if (v.empty()) throw std::invalid_argument("lex_min_vertex of an empty polygon");
  return *std::min_element(v.begin(), v.end(), lex_less);
}

} // namespace tripoly
