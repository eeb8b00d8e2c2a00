#include <doctest.h>

#include <cmath>

#include "tripoly/errors.hpp"
#include "tripoly/estimator.hpp"

using namespace tripoly;

TEST_CASE("Wilson interval") {
  const Interval i = wilson_interval(5, 10, 1.96);
  CHECK(i.lo == doctest::Approx(0.236593).epsilon(1e-5));
  CHECK(i.hi == doctest::Approx(0.763407).epsilon(1e-5));
  const Interval zero = wilson_interval(0, 50, kZ99);
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi > 0.0);
  const Interval all = wilson_interval(50, 50, kZ99);
  CHECK(all.hi == 1.0);
  CHECK(all.lo < 1.0);
  CHECK(wilson_interval(0, 0, 1.0).hi == 1.0);
  const Interval frac = wilson_interval_effective(0.5, 10.0, 1.96);
  CHECK(frac.lo == i.lo);
  CHECK(frac.hi == i.hi);
  // Shrinks like 1/sqrt(n).
  CHECK(wilson_interval(2500, 10000, 1.0).half_width() ==
        doctest::Approx(std::sqrt(0.25 * 0.75 / 10000)).epsilon(1e-3));
}

TEST_CASE("counting by lex-min vertex") {
  LineRealization r{{}, Weights(1.0 / 3, 1.0 / 3), Window(10.0), 0};
  r.lines = {{CanonicalAngle(0), 1.0, 0}, {CanonicalAngle(1), 0.5, 1}, {CanonicalAngle(2), 0.3, 2}};
  const Arrangement arr = build(r);
  const CellCounts c = count_typical_cells(arr);
  CHECK(c.counts[0] == 1);
  CHECK(c.total() == 1);

  // Boundary faces whose lex-min falls in the box are tallied, not counted.
  const double a = arr.window().inner_half_width();
  std::uint64_t in_box = 0;
  for (const auto& f : arr.faces()) {
    in_box += f.touches_boundary && f.lex_min.x >= -a && f.lex_min.x < a && f.lex_min.y >= -a && f.lex_min.y < a;
  }
  CHECK(in_box > 0);
  CHECK(c.discarded_boundary_cells == in_box);

  CellCounts sum = c;
  sum += c;
  CHECK(sum.total() == 2);
  CHECK(sum.discarded_boundary_cells == 2 * in_box);
}

TEST_CASE("estimates are deterministic and independent of threads") {
  const Weights w(0.25, 0.35);
  const Window win(15.0);
  const PmfReport a = estimate_pmf(w, win, 6, 99, 1);
  const PmfReport b = estimate_pmf(w, win, 6, 99, 4);
  CHECK(a.tally.counts == b.tally.counts);
  CHECK(a.seeds == b.seeds);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.replicates == 6);
  CHECK(a.seeds.size() == 6);
  if (a.degenerate_retries == 0) {
    for (std::size_t i = 0; i < a.seeds.size(); ++i) CHECK(a.seeds[i] == replicate_seed(99, i, 0));
  }

  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    sum += a.estimates[k];
    CHECK(a.ci99[k].lo <= a.estimates[k]);
    CHECK(a.ci99[k].hi >= a.estimates[k]);
  }
  CHECK(sum == doctest::Approx(1.0));
  CHECK(estimate_pmf(w, win, 6, 100, 2).tally.counts != a.tally.counts);

  for (int k = 0; k < 4; ++k) {
    CHECK(a.design_effects[k] >= 1.0);
    CHECK(a.std_errors[k] * a.std_errors[k] ==
          doctest::Approx(a.estimates[k] * (1 - a.estimates[k]) / a.effective_cells(k)));
    const Interval ci = wilson_interval_effective(a.estimates[k], a.effective_cells(k), kZ99);
    CHECK(a.ci99[k].lo == ci.lo);
    CHECK(a.ci99[k].hi == ci.hi);
  }

  const PmfReport grown = estimate_pmf(w, win, EstimatorOptions{1, 500, 3}, 99);
  CHECK(grown.total() >= 500);
  CHECK(grown.replicates >= 1);
}

TEST_CASE("mean and variance") {
  PmfReport point;
  point.estimates = {0.0, 1.0, 0.0, 0.0};
  const auto [m, v] = empirical_mean_variance(point);
  CHECK(m == 4.0);
  CHECK(v == 0.0);

  const PmfReport r = estimate_pmf(Weights(1.0 / 3, 1.0 / 3), Window(60.0), EstimatorOptions{1, 20000, 0}, 5);
  const auto [mean, var] = empirical_mean_variance(r);
  CHECK(std::abs(mean - 4.0) < 0.03);
  CHECK(std::abs(var - 0.5) < 0.05);
  CHECK_FALSE(r.boundary_flagged());
}

TEST_CASE("edge diagnostics and empty samples") {
  const PmfReport small = estimate_pmf(Weights(1.0 / 3, 1.0 / 3), Window(4.0), 100, 1);
  CHECK(small.boundary_flagged());
  CHECK(small.discard_ratio() > kDiscardThreshold);
  CHECK_THROWS_AS(estimate_pmf(Weights(1.0 / 3, 1.0 / 3), Window(0.2, 0.1), 1, 1), EmptySampleError);

  const auto j = to_json(small, true);
  for (const char* key : {"schema_version", "weights", "window", "replicates", "counts", "estimates", "ci99", "mean",
                          "variance", "discarded_boundary_cells", "seeds", "wall_time_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(to_json(small).contains("wall_time_ms"));
}
