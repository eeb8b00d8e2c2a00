#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tripoly/cell_cases.hpp"
#include "tripoly/errors.hpp"
#include "tripoly/rng.hpp"

using namespace tripoly;

namespace {


// Uniform on a finite range, otherwise lower + Exp(1) scaled by the current prefix size.
bool draw_in_region(const CaseSpec& c, RandomStream& rng, std::vector<double>& z) {
  z.assign(c.free_count(), 0.0);
  for (int v : c.order) {
    const double lo = c.lower[v].eval(z);
    const double hi = c.upper[v].eval(z);
    if (!(hi > lo)) return false;
    z[v] = std::isinf(hi) ? lo + 2.0 * rng.exponential(1.0) : lo + (hi - lo) * rng.uniform();
  }
  return in_region(c, z);
}

bool valid_cell(const CaseSpec& c, const std::vector<double>& free) {
  const auto sides = complete_sides(c, free);
  for (double s : sides) {
    if (!(s > 1e-12)) return false;
  }
  const Polygon poly = case_polygon(c, sides);
  return closing_residual(poly) < 1e-9 && poly.is_convex_simple();
}

std::vector<const CaseSpec*> siblings(const CaseSpec& c) {
  std::vector<const CaseSpec*> out;
  for (const auto& other : all_cases()) {
    if (&other != &c && other.sixths == c.sixths) out.push_back(&other);
  }
  return out;
}

} // namespace

TEST_CASE("table sizes and lookups") {
  CHECK(all_cases().size() == 20);
  CHECK(case_table(3).size() == 2);
  CHECK(case_table(4).size() == 9);
  CHECK(case_table(5).size() == 7);
  CHECK(case_table(6).size() == 2);
  CHECK_THROWS_AS(case_table(7), ValidationError);
  CHECK_THROWS_AS(find_case("Q10"), ValidationError);
  CHECK(find_case("▱₄").id == "Q4");
  CHECK(find_case("H1.2").symbol == "⬡₁.₂");

  int para = 0, trap = 0;
  for (const auto& c : case_table(4)) (c.subtype == QuadSubtype::para ? para : trap)++;
  CHECK(para == 3);
  CHECK(trap == 6);
  CHECK(std::string(to_string(QuadSubtype::trap)) == "trap");
}

TEST_CASE("verbatim rows") {
  const auto& t1 = find_case("T1");
  CHECK(std::vector<int>(t1.sixths.begin(), t1.sixths.begin() + 3) == std::vector<int>{0, 1, 2});
  CHECK(std::vector<int>(find_case("T2").sixths.begin(), find_case("T2").sixths.begin() + 3) ==
        std::vector<int>{1, 2, 0});
  CHECK(t1.lower[0].eval(std::vector<double>{}) == 0.0);
  CHECK(t1.upper[0].infinite);

  const auto& q4 = find_case("Q4");
  CHECK(std::vector<int>(q4.sixths.begin(), q4.sixths.begin() + 4) == std::vector<int>{0, 2, 0, -2});
  const std::vector<double> z{1.5, 0.0};
  CHECK(q4.lower[1].eval(z) == 1.5);
  CHECK(q4.upper[1].infinite);

  const std::vector<double> h{2.0, 3.0, 0.5, 0.0};
  const auto& h11 = find_case("H1.1");
  CHECK(h11.upper[2].eval(h) == 2.0);
  CHECK(h11.lower[3].eval(h) == 1.5);
  CHECK(h11.upper[3].eval(h) == 5.0);
  const auto& h12 = find_case("H1.2");
  CHECK(h12.lower[2].eval(h) == 2.0);
  CHECK(h12.upper[2].infinite);
  CHECK(h12.lower[3].eval(h) == 0.0);
  CHECK(h12.upper[3].eval(h) == 5.0);

  // Closing relations of the worked quadrilateral and pentagon.
  CHECK(complete_sides(q4, std::vector<double>{1.0, 3.0}) == std::vector<double>{1.0, 3.0, 1.0, 2.0});
  CHECK(complete_sides(find_case("P5"), std::vector<double>{2.0, 1.0, 2.5}) ==
        std::vector<double>{2.0, 1.0, 2.5, 0.5, 0.5});
}

TEST_CASE("side directions decrease and angle weights honor the sign convention") {
  const Weights w(0.2, 0.3);
  for (const auto& c : all_cases()) {
    const auto d = side_directions(c);
    for (int i = 1; i < c.n; ++i) CHECK(d[i] < d[i - 1]);
    CHECK(d.front() - d.back() < 2 * kPi);
    for (double l : side_lambdas(c, w)) CHECK(l > 0.0);
  }
  // G({-2pi/3}) = G({pi/3}) = q.
  CHECK(angle_probability(find_case("Q4"), w) == doctest::Approx(0.2 * 0.5 * 0.2 * 0.3));
  CHECK(angle_probability(find_case("T1"), w) == doctest::Approx(0.2 * 0.3 * 0.5));
}

TEST_CASE("upper limits agree with the general formula") {
  RandomStream rng(3);
  CHECK(upper_limit(find_case("Q3"), 2, std::vector<double>{1.7}) == doctest::Approx(1.7));
  CHECK(upper_limit(find_case("P5"), 3, std::vector<double>{1.0, 2.0}) == doctest::Approx(3.0));
  CHECK(std::isinf(upper_limit(find_case("Q1"), 2, std::vector<double>{1.0})));
  for (const auto& c : all_cases()) {
    const auto sibs = siblings(c);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> z(c.free_count());
      for (double& x : z) x = 3.0 * rng.uniform();
      for (int i = 1; i <= c.free_count(); ++i) {
        const std::span<const double> prefix(z.data(), i - 1);
        // A split row covers part of its parent's range; the family union must reach the formula.
        double transcribed = c.upper[i - 1].eval(prefix);
        for (const CaseSpec* s : sibs) transcribed = std::max(transcribed, s->upper[i - 1].eval(prefix));
        const double formula = upper_limit(c, i, prefix);
        if (std::isinf(formula)) {
          CHECK(std::isinf(transcribed));
        } else {
          CHECK(transcribed == doctest::Approx(formula).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("closing coefficients solve the closing relations") {
  RandomStream rng(4);
  for (const auto& c : all_cases()) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> z(c.free_count());
      for (double& x : z) x = 5.0 * rng.uniform();
      const auto sides = complete_sides(c, z);
      const auto solved = solve_closing(c, z);
      CHECK(sides[c.n - 2] == doctest::Approx(solved[0]));
      CHECK(sides[c.n - 1] == doctest::Approx(solved[1]));
    }
  }
}

TEST_CASE("limit regions produce valid cells and nothing outside does") {
  RandomStream rng(5);
  for (const auto& c : all_cases()) {
    CAPTURE(c.id);
    const auto sibs = siblings(c);
    int inside = 0, outside = 0;
    std::vector<double> z;
    while (inside < 2000) {
      if (!draw_in_region(c, rng, z)) continue;
      ++inside;
      REQUIRE(valid_cell(c, z));

      // Push one variable just across one of its finite limits.
      for (int v = 0; v < c.free_count(); ++v) {
        for (int side = 0; side < 2; ++side) {
          const double limit = side == 0 ? c.lower[v].eval(z) : c.upper[v].eval(z);
          if (std::isinf(limit)) continue;
          std::vector<double> out = z;
          out[v] = limit + (side == 0 ? -1e-4 : 1e-4);
          if (in_region(c, out)) continue; // the shift moved a dependent limit too
          ++outside;
          bool in_sibling = false;
          for (const CaseSpec* s : sibs) in_sibling = in_sibling || in_region(*s, out);
          CHECK((in_sibling || !valid_cell(c, out)));
        }
      }
    }
    CHECK(outside > 0);
  }
}

TEST_CASE("density values") {
  const Weights w(0.2, 0.3);
  const double lam = lambda_total(w);
  const auto& t1 = find_case("T1");
  CHECK(density_value(t1, std::vector<double>{1e-12}, w) == doctest::Approx(2.0 / lam * 0.75));
  CHECK(density_value(t1, std::vector<double>{-1.0}, w) == 0.0);

  // The worked quadrilateral integrand.
  const auto& q4 = find_case("Q4");
  const double p = w.p();
  for (auto [z1, z2] : std::vector<std::pair<double, double>>{{0.5, 1.0}, {1.0, 2.5}, {0.1, 4.0}}) {
    const double expected = 2.0 / lam * std::pow(0.5 * kSqrt3, 3) * std::exp(-0.5 * kSqrt3 * (p * (z1 - z2) + z2));
    CHECK(density_value(q4, std::vector<double>{z1, z2}, w) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(density_value(q4, std::vector<double>{1.0, 0.5}, w) == 0.0);

  // The density is exp(-sum a_j z_j) times a constant.
  RandomStream rng(6);
  for (const auto& c : all_cases()) {
    const auto a = reduced_rates(c, w);
    std::vector<double> z, base;
    while (!draw_in_region(c, rng, base)) {
    }
    while (!draw_in_region(c, rng, z)) {
    }
    double shift = 0.0;
    for (int j = 0; j < c.free_count(); ++j) shift += a[j] * (z[j] - base[j]);
    CHECK(density_value(c, z, w) / density_value(c, base, w) == doctest::Approx(std::exp(-shift)).epsilon(1e-10));
  }
}
