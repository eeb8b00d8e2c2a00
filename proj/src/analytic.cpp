#include "tripoly/analytic.hpp"

#include <limits>

#include "tripoly/errors.hpp"

namespace tripoly::analytic {

double to_double(const Rational& x) { return x.convert_to<double>(); }

Formulas<double> evaluate(const Weights& w) { return evaluate(w.p(), w.q()); }

Formulas<Rational> evaluate_exact(const Weights& w) {
  if (!w.is_exact()) throw ValidationError("weights were not given as exact fractions");
  return evaluate(w.exact_p(), w.exact_q());
}

bool ExtremaReport::ok() const {
  for (const auto& r : results) {
    if (!r.at_expected || !r.strict) return false;
  }
  return !results.empty();
}

ExtremaReport verify_extrema(const Rational& step) {
  if (!(step > 0) || step > Rational(1, 10)) throw ValidationError("grid step must lie in (0, 1/10]");

  struct GridPoint {
    Rational p, q;
    std::array<Rational, 4> pmf;
  };
  std::vector<GridPoint> grid;
  for (Rational p = step; p < 1; p += step) {
    for (Rational q = step; p + q < 1; q += step) grid.push_back({p, q, pmf(p, q)});
  }

  ExtremaReport report;
  report.step = step;
  report.grid_points = grid.size();

  // Grid point nearest (1/3, 1/3); ties go to the first in scan order.
  const Rational third(1, 3);
  std::size_t nearest = 0;
  Rational best_d2 = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Rational dp = grid[i].p - third;
    const Rational dq = grid[i].q - third;
    const Rational d2 = dp * dp + dq * dq;
    if (best_d2 < 0 || d2 < best_d2) {
      best_d2 = d2;
      nearest = i;
    }
  }
  report.expected_p = grid[nearest].p;
  report.expected_q = grid[nearest].q;

  for (int k = 0; k < 4; ++k) {
    ExtremumResult res;
    res.component = k + 3;
    res.maximize = k != 1;
    auto better = [&](const Rational& a, const Rational& b) { return res.maximize ? a > b : a < b; };
    std::size_t arg = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (better(grid[i].pmf[k], grid[arg].pmf[k])) arg = i;
    }
    res.p = grid[arg].p;
    res.q = grid[arg].q;
    res.value = grid[arg].pmf[k];
    res.at_expected = arg == nearest;
    res.strict = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i != arg && !better(res.value, grid[i].pmf[k])) {
        res.strict = false;
        break;
      }
    }
    report.results.push_back(res);
  }
  return report;
}

} // namespace tripoly::analytic
