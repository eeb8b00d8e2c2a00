#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "tripoly/arrangement.hpp"
#include "tripoly/errors.hpp"

using namespace tripoly;

namespace {

LineRealization make(const std::vector<std::pair<int, double>>& spec, double R = 10.0) {
  LineRealization r{{}, Weights(1.0 / 3, 1.0 / 3), Window(R), 0};
  int id = 0;
  for (auto [k, off] : spec) r.lines.push_back({CanonicalAngle(k), off, id++});
  return r;
}

// Sutherland-Hodgman: keep the side of `line` where sign * (<x, n> - offset) >= 0.
std::vector<Point> clip(const std::vector<Point>& poly, const DirectedLine& line, int sign) {
  std::vector<Point> out;
  const Point n = line.normal();
  auto value = [&](Point x) { return sign * (dot(x, n) - line.offset); };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % poly.size()];
    const double va = value(a), vb = value(b);
    if (va >= 0) out.push_back(a);
    if ((va >= 0) != (vb >= 0)) out.push_back(a + (va / (va - vb)) * (b - a));
  }
  return out;
}

// Drops repeated points left by clipping through a vertex.
std::vector<Point> dedupe(std::vector<Point> poly) {
  std::vector<Point> out;
  for (const Point& p : poly) {
    if (out.empty() || norm(p - out.back()) > 1e-9) out.push_back(p);
  }
  while (out.size() > 1 && norm(out.front() - out.back()) <= 1e-9) out.pop_back();
  return out;
}

struct OracleCell {
  int vertices;
  double area;
  bool touches_boundary;
};

// Every sign pattern of the realization's lines, clipped out of the window independently.
std::vector<OracleCell> oracle_cells(const LineRealization& r) {
  const double R = r.window.half_width;
  const std::size_t L = r.lines.size();
  std::vector<OracleCell> cells;
  for (unsigned mask = 0; mask < (1u << L); ++mask) {
    std::vector<Point> poly{{-R, -R}, {R, -R}, {R, R}, {-R, R}};
    for (std::size_t i = 0; i < L && poly.size() >= 3; ++i) {
      poly = dedupe(clip(poly, r.lines[i], (mask >> i) & 1u ? 1 : -1));
    }
    if (poly.size() < 3) continue;
    const double area = Polygon::from_vertices(poly).area();
    if (area < 1e-9) continue;
    bool boundary = false;
    for (const Point& p : poly) boundary = boundary || std::max(std::abs(p.x), std::abs(p.y)) > R - 1e-9;
    cells.push_back({static_cast<int>(poly.size()), area, boundary});
  }
  return cells;
}

} // namespace

TEST_CASE("empty arrangement is the window") {
  const auto arr = build(make({}));
  REQUIRE(arr.faces().size() == 1);
  CHECK(arr.faces()[0].touches_boundary);
  CHECK(arr.faces()[0].vertex_count == 4);
  CHECK(arr.faces()[0].area == doctest::Approx(400.0));
  CHECK(arr.euler_characteristic() == 2);
  CHECK(interior_faces(arr).empty());
}

TEST_CASE("one line per family: central triangle or degeneracy") {
  const auto arr = build(make({{0, 1.0}, {1, 0.5}, {2, 0.3}}));
  const auto inner = interior_faces(arr);
  REQUIRE(inner.size() == 1);
  CHECK(inner[0].vertex_count == 3);
  CHECK(arr.euler_characteristic() == 2);

  CHECK_THROWS_AS(build(make({{0, 0.0}, {1, 0.0}, {2, 0.0}})), DegenerateInputError);
  CHECK_THROWS_AS(build(make({{0, 1.0}, {0, 1.0 + 1e-13}})), DegenerateInputError);
  try {
    build(make({{0, 2.0}, {0, 2.0}}));
    FAIL("expected a degeneracy");
  } catch (const DegenerateInputError& e) {
    CHECK(e.first_line() == 0);
    CHECK(e.second_line() == 1);
  }
}

TEST_CASE("two lines per family match independent polygon clipping") {
  const std::vector<std::vector<std::pair<int, double>>> configs = {
      {{0, -1.3}, {0, 2.1}, {1, -0.7}, {1, 1.9}, {2, -2.4}, {2, 0.45}},
      {{0, 0.2}, {0, 3.3}, {1, 1.1}, {1, -2.6}, {2, 1.7}, {2, -0.9}},
      {{0, -4.0}, {0, -3.1}, {1, 0.35}, {1, 4.2}, {2, 2.2}, {2, 2.9}},
  };
  for (const auto& cfg : configs) {
    const auto r = make(cfg);
    const auto arr = build(r);
    const auto oracle = oracle_cells(r);
    REQUIRE(arr.faces().size() == oracle.size());

    auto face_key = [](int n, double area, bool b) { return std::tuple{b, n, std::round(area * 1e6)}; };
    std::vector<std::tuple<bool, int, double>> got, want;
    for (const auto& f : arr.faces()) got.push_back(face_key(f.vertex_count, f.area, f.touches_boundary));
    for (const auto& c : oracle) want.push_back(face_key(c.vertices, c.area, c.touches_boundary));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    for (const auto& f : interior_faces(arr)) {
      CHECK(f.vertex_count >= 3);
      CHECK(f.vertex_count <= 6);
      CHECK(f.polygon().is_convex_simple());
    }
    CHECK(arr.euler_characteristic() == 2);
  }
}

TEST_CASE("random arrangements: Euler, tiling, convex interior faces") {
  const Weights w(0.25, 0.35);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto r = sample_lines(w, Window(8.0), seed);
    Arrangement arr;
    try {
      arr = build(r);
    } catch (const DegenerateInputError&) {
      continue;
    }
    CHECK(arr.euler_characteristic() == 2);
    double total = 0.0, interior = 0.0;
    for (const auto& f : arr.faces()) {
      CHECK(f.area > 0.0);
      total += f.area;
    }
    CHECK(total == doctest::Approx(256.0).epsilon(1e-6));
    for (const auto& f : interior_faces(arr)) {
      interior += f.area;
      CHECK(f.vertex_count >= 3);
      CHECK(f.vertex_count <= 6);
      CHECK(f.polygon().is_convex_simple());
      CHECK(lex_min_vertex(f.polygon()) == f.lex_min);
      // At most two sides per direction family.
      std::array<int, 3> per_family{};
      const auto& v = f.vertices;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Point d = v[(i + 1) % v.size()] - v[i];
        double phi = std::atan2(d.y, d.x);
        if (phi < 0) phi += kPi;
        if (phi >= kPi - 1e-9) phi -= kPi;
        ++per_family[normalize_angle(phi).index()];
      }
      for (int c : per_family) CHECK(c <= 2);
    }
    CHECK(interior <= 256.0);

    // Rebuilding from the serialized realization gives the same faces.
    const auto again = build(realization_from_json(to_json(r)));
    CHECK(again.faces().size() == arr.faces().size());
    CHECK(interior_faces(again).size() == interior_faces(arr).size());
  }
}

TEST_CASE("crossing intensity matches the vertex-intensity formula") {
  const Weights w(0.2, 0.3);
  const Window win(20.0, 0.5);
  double crossings = 0.0;
  const int runs = 200;
  for (int s = 0; s < runs; ++s) {
    const auto r = sample_lines(w, win, 500 + s);
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
      for (std::size_t j = i + 1; j < r.lines.size(); ++j) {
        if (r.lines[i].family == r.lines[j].family) continue;
        const Point x = intersect(r.lines[i], r.lines[j]);
        crossings += std::abs(x.x) < win.inner_half_width() && std::abs(x.y) < win.inner_half_width();
      }
    }
  }
  const double expected = expected_cells_in_box(w, win);
  // Crossings per box are roughly Poisson; allow 4 standard errors.
  CHECK(std::abs(crossings / runs - expected) < 4 * std::sqrt(expected / runs));
}

TEST_CASE("face CSV dump") {
  const auto arr = build(make({{0, 1.0}, {1, 0.5}, {2, 0.3}}));
  std::ostringstream out;
  write_faces_csv(out, arr);
  const std::string csv = out.str();
  CHECK(csv.rfind("face_id,vertex_count,touches_boundary,lex_min_x,lex_min_y,area\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(arr.faces().size()) + 1);
}
