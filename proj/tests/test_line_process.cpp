#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tripoly/errors.hpp"
#include "tripoly/line_process.hpp"
#include "tripoly/rng.hpp"

using namespace tripoly;

TEST_CASE("random streams are reproducible and split independently") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 5; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(RandomStream(42).split(1).key() == RandomStream(42).split(1).key());
  CHECK(RandomStream(42).split(1).key() != RandomStream(42).split(2).key());
  CHECK(RandomStream(42).key() != RandomStream(43).key());

  // A substream does not depend on how much the parent consumed.
  RandomStream parent(7);
  const auto before = parent.split(3).next_u64();
  for (int i = 0; i < 100; ++i) parent.uniform();
  CHECK(parent.split(3).next_u64() == before);

  RandomStream u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x > 0.0 && x < 1.0));
  }
}

TEST_CASE("exponential draws have the right mean and truncation") {
  RandomStream rng(11);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.exponential(2.0);
  CHECK(std::abs(sum / n - 0.5) < 4 * 0.5 / std::sqrt(n));

  for (double rate : {3.0, 0.0, -2.0}) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.truncated_exponential(rate, 1.0, 2.0);
      REQUIRE((x >= 1.0 && x <= 2.0));
      mean += x;
    }
    mean /= n;
    // Mean of exp(-a x) restricted to [1, 2].
    double expected = 1.5;
    if (rate != 0.0) {
      const double a = rate;
      expected = (std::exp(-a) * (1 + 1 / a) - std::exp(-2 * a) * (2 + 1 / a)) / (std::exp(-a) - std::exp(-2 * a));
    }
    CHECK(mean == doctest::Approx(expected).epsilon(3e-3));
  }
  const double tail = rng.truncated_exponential(1.0, 5.0, INFINITY);
  CHECK(tail >= 5.0);
}

TEST_CASE("window validation") {
  CHECK_THROWS_AS(Window(0.0), ValidationError);
  CHECK_THROWS_AS(Window(10.0, 1.0), ValidationError);
  const Window w(10.0, 0.25);
  CHECK(w.inner_half_width() == doctest::Approx(2.5));
  CHECK(w.inner_area() == doctest::Approx(25.0));
  CHECK(w.offset_bound() == doctest::Approx(10.0 * std::sqrt(2.0)));
}

TEST_CASE("sample_lines is deterministic and dense in ids") {
  const Weights w(0.2, 0.3);
  const Window win(20.0);
  const auto a = sample_lines(w, win, 5);
  const auto b = sample_lines(w, win, 5);
  REQUIRE(a.lines.size() == b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    CHECK(a.lines[i].id == static_cast<int>(i));
    CHECK(a.lines[i].offset == b.lines[i].offset);
    CHECK(a.lines[i].family == b.lines[i].family);
    CHECK(std::abs(a.lines[i].offset) <= win.offset_bound());
  }
  const auto c = sample_lines(w, win, 6);
  CHECK((c.lines.size() != a.lines.size() || c.lines[0].offset != a.lines[0].offset));

  const auto round_trip = realization_from_json(to_json(a));
  REQUIRE(round_trip.lines.size() == a.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) CHECK(round_trip.lines[i].offset == a.lines[i].offset);
  const auto exact = sample_lines(Weights::parse("1/3", "1/6"), win, 1);
  CHECK(realization_from_json(to_json(exact)).weights.exact_q() == Rational(1, 6));
}

TEST_CASE("per-family line counts are Poisson") {
  const Weights w(0.2, 0.3);
  const Window win(10.0);
  const double span = 2 * win.offset_bound();
  const int runs = 2000;
  for (int k = 0; k < 3; ++k) {
    const double mu = w.family_weight(k) * span;
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < runs; ++s) {
      const auto real = sample_lines(w, win, 1000 + s);
      const double c = static_cast<double>(std::count_if(real.lines.begin(), real.lines.end(),
                                                         [&](const DirectedLine& l) { return l.family.index() == k; }));
      sum += c;
      sum2 += c * c;
    }
    const double mean = sum / runs;
    const double var = sum2 / runs - mean * mean;
    CHECK(std::abs(mean - mu) < 3 * std::sqrt(mu / runs));
    // Var of the sample variance of a Poisson(mu) is about (mu + 2 mu^2) / runs.
    CHECK(std::abs(var - mu) < 3 * std::sqrt((mu + 2 * mu * mu) / runs));
  }
  // Total mean 2R sqrt2 per unit of weight.
  double total = 0.0;
  for (int s = 0; s < runs; ++s) total += static_cast<double>(sample_lines(w, win, 1000 + s).lines.size());
  CHECK(std::abs(total / runs - span) < 3 * std::sqrt(span / runs));
}

TEST_CASE("offsets are uniform on the sampling interval (KS)") {
  const Weights w(1.0 / 3, 1.0 / 3);
  const Window win(30.0);
  std::vector<double> u;
  for (int s = 0; u.size() < 5000; ++s) {
    for (const auto& l : sample_lines(w, win, 77 + s).lines) {
      if (l.family.index() == 1) u.push_back((l.offset + win.offset_bound()) / (2 * win.offset_bound()));
    }
  }
  std::sort(u.begin(), u.end());
  double d = 0.0;
  const double n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  }
  // Asymptotic critical value at alpha = 0.01.
  CHECK(d < 1.628 / std::sqrt(n));
}

TEST_CASE("near-degenerate weights and cell intensity") {
  const Weights thin(1e-9, 0.5);
  const Window win(10.0);
  int family0 = 0;
  for (int s = 0; s < 200; ++s) {
    for (const auto& l : sample_lines(thin, win, s).lines) family0 += l.family.index() == 0;
  }
  CHECK(family0 == 0);

  const Window unit(2.0, 0.25); // inner box [-0.5, 0.5]^2, area 1
  CHECK(expected_cells_in_box(Weights(1.0 / 3, 1.0 / 3), unit) == doctest::Approx(0.5 * std::sqrt(3.0) / 3));
  CHECK(expected_cells_in_box(thin, unit) == doctest::Approx(0.5 * std::sqrt(3.0) * 0.25).epsilon(1e-6));
  const Window twice(2.0 * std::sqrt(2.0), 0.25);
  CHECK(expected_cells_in_box(thin, twice) == doctest::Approx(2 * expected_cells_in_box(thin, unit)));
}
