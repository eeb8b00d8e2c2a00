#include "tripoly/cell_cases.hpp"

#include <cmath>
#include <limits>

#include "tripoly/errors.hpp"

namespace tripoly {

namespace {

using C = std::array<int, kMaxFree>;

LimitExpr lim(C c) { return LimitExpr::of(c); }
const LimitExpr kZero = LimitExpr::zero();
const LimitExpr kInf = LimitExpr::inf();

// Outermost-first order in which every limit only references outer variables.
std::vector<int> derive_order(const CaseSpec& c) {
  const int m = c.free_count();
  std::vector<int> order;
  std::vector<bool> placed(m, false);
  while (static_cast<int>(order.size()) < m) {
    bool progressed = false;
    for (int v = 0; v < m; ++v) {
      if (placed[v]) continue;
      bool ready = true;
      for (int j = 0; j < m; ++j) {
        if (j != v && !placed[j] && (c.lower[v].uses(j) || c.upper[v].uses(j))) ready = false;
      }
      if (ready) {
        order.push_back(v);
        placed[v] = true;
        progressed = true;
        break;
      }
    }
    if (!progressed) throw std::logic_error("cyclic limit dependencies in case " + c.id);
  }
  return order;
}

CaseSpec make(std::string id, std::string symbol, std::vector<int> angles, std::vector<LimitExpr> lower,
              std::vector<LimitExpr> upper, C close_a, C close_b, QuadSubtype subtype = QuadSubtype::none) {
  CaseSpec c;
  c.id = std::move(id);
  c.symbol = std::move(symbol);
  c.n = static_cast<int>(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) c.sixths[i] = angles[i];
  for (std::size_t i = 0; i < lower.size(); ++i) {
    c.lower[i] = lower[i];
    c.upper[i] = upper[i];
  }
  c.closing = {close_a, close_b};
  c.subtype = subtype;
  c.order = derive_order(c);
  return c;
}

std::vector<CaseSpec> build_table() {
  const auto para = QuadSubtype::para;
  const auto trap = QuadSubtype::trap;
  const LimitExpr z1 = lim({1, 0, 0, 0});
  const LimitExpr z2 = lim({0, 1, 0, 0});
  const LimitExpr z1_plus_z2 = lim({1, 1, 0, 0});
  const LimitExpr z1_minus_z2 = lim({1, -1, 0, 0});
  const LimitExpr z1_minus_z3 = lim({1, 0, -1, 0});

  std::vector<CaseSpec> t;
  t.push_back(make("T1", "△₁", {0, 1, 2}, {kZero}, {kInf}, {1}, {1}));
  t.push_back(make("T2", "△₂", {1, 2, 0}, {kZero}, {kInf}, {1}, {1}));

  t.push_back(make("Q1", "▱₁", {0, 1, 0, -2}, {kZero, kZero}, {kInf, kInf}, {1, 0}, {0, 1}, para));
  t.push_back(make("Q2", "▱₂", {0, 1, 0, -1}, {kZero, kZero}, {kInf, kInf}, {1, 0}, {1, 1}, trap));
  t.push_back(make("Q3", "▱₃", {0, 1, -1, -2}, {kZero, kZero}, {kInf, z1}, {1, -1}, {0, 1}, trap));
  t.push_back(make("Q4", "▱₄", {0, 2, 0, -2}, {kZero, z1}, {kInf, kInf}, {1, 0}, {-1, 1}, trap));
  t.push_back(make("Q5", "▱₅", {0, 2, 0, -1}, {kZero, kZero}, {kInf, kInf}, {1, 0}, {0, 1}, para));
  t.push_back(make("Q6", "▱₆", {0, 2, 1, -1}, {kZero, kZero}, {kInf, kInf}, {1, 1}, {0, 1}, trap));
  t.push_back(make("Q7", "▱₇", {1, 2, 1, 0}, {kZero, kZero}, {kInf, kInf}, {1, 0}, {1, 1}, trap));
  t.push_back(make("Q8", "▱₈", {1, 2, 1, -1}, {kZero, kZero}, {kInf, kInf}, {1, 0}, {0, 1}, para));
  t.push_back(make("Q9", "▱₉", {1, 2, 0, -1}, {kZero, kZero}, {kInf, z1}, {1, -1}, {0, 1}, trap));

  t.push_back(make("P1", "⬠₁", {0, 1, 0, -1, -2}, {kZero, kZero, kZero}, {kInf, kInf, z1}, {1, 0, -1}, {0, 1, 1}));
  t.push_back(make("P2.1", "⬠₂.₁", {0, 2, 0, -1, -2}, {kZero, z1, kZero}, {kInf, kInf, z1}, {1, 0, -1},
                   {-1, 1, 1}));
  t.push_back(make("P2.2", "⬠₂.₂", {0, 2, 0, -1, -2}, {z2, kZero, z1_minus_z2}, {kInf, kInf, z1}, {1, 0, -1},
                   {-1, 1, 1}));
  t.push_back(make("P3", "⬠₃", {0, 2, 1, 0, -1}, {kZero, kZero, kZero}, {kInf, kInf, kInf}, {1, 1, 0}, {0, 1, 1}));
  t.push_back(make("P4", "⬠₄", {0, 2, 1, 0, -2}, {kZero, kZero, z1}, {kInf, kInf, kInf}, {1, 1, 0}, {-1, 0, 1}));
  t.push_back(make("P5", "⬠₅", {0, 2, 1, -1, -2}, {kZero, kZero, z1}, {kInf, kInf, z1_plus_z2}, {1, 1, -1},
                   {-1, 0, 1}));
  t.push_back(make("P6", "⬠₆", {1, 2, 1, 0, -1}, {kZero, kZero, kZero}, {kInf, kInf, z1}, {1, 0, -1}, {0, 1, 1}));

  t.push_back(make("H1.1", "⬡₁.₁", {0, 2, 1, 0, -1, -2}, {kZero, kZero, kZero, z1_minus_z3},
                   {kInf, kInf, z1, z1_plus_z2}, {1, 1, 0, -1}, {-1, 0, 1, 1}));
  t.push_back(make("H1.2", "⬡₁.₂", {0, 2, 1, 0, -1, -2}, {kZero, kZero, z1, kZero}, {kInf, kInf, kInf, z1_plus_z2},
                   {1, 1, 0, -1}, {-1, 0, 1, 1}));
  return t;
}

} // namespace

double LimitExpr::eval(std::span<const double> z) const {
  if (infinite) return std::numeric_limits<double>::infinity();
  double v = constant;
  for (std::size_t j = 0; j < z.size() && j < coeff.size(); ++j) v += coeff[j] * z[j];
  return v;
}

const char* to_string(QuadSubtype s) {
  switch (s) {
  case QuadSubtype::para: return "para";
  case QuadSubtype::trap: return "trap";
  default: return "";
  }
}

const std::vector<CaseSpec>& all_cases() {
  static const std::vector<CaseSpec> table = build_table();
  return table;
}

std::vector<CaseSpec> case_table(int n) {
  if (n < 3 || n > 6) throw ValidationError("vertex count must be between 3 and 6");
  std::vector<CaseSpec> out;
  for (const auto& c : all_cases()) {
    if (c.n == n) out.push_back(c);
  }
  return out;
}

const CaseSpec& find_case(const std::string& key) {
  for (const auto& c : all_cases()) {
    if (c.id == key || c.symbol == key) return c;
  }
  throw ValidationError("unknown case " + key);
}

std::vector<double> side_directions(const CaseSpec& c) {
  std::vector<double> d(c.n);
  for (int i = 1; i < c.n; ++i) {
    d[i - 1] = c.angle(i);
    // A verbatim angle names a line; walk it in the sense that keeps turning clockwise.
    if (i >= 2 && d[i - 1] >= d[i - 2] - kGeometryTolerance) d[i - 1] -= kPi;
  }
  d[c.n - 1] = c.angle(0) - kPi;
  return d;
}

std::vector<double> side_lambdas(const CaseSpec& c, const Weights& w) {
  std::vector<double> out(c.n);
  for (int i = 1; i < c.n; ++i) out[i - 1] = lambda_of(CanonicalAngle::from_sixth(c.sixths[i]), w);
  out[c.n - 1] = lambda_of(CanonicalAngle::from_sixth(c.sixths[0]), w);
  return out;
}

double angle_probability(const CaseSpec& c, const Weights& w) {
  double prob = 1.0;
  for (int i = 0; i < c.n; ++i) prob *= w.family_weight(CanonicalAngle::from_sixth(c.sixths[i]).index());
  return prob;
}

double upper_limit(const CaseSpec& c, int i, std::span<const double> prefix) {
  if (i < 1 || i > c.free_count()) throw std::out_of_range("upper_limit index");
  const double phi0 = c.angle(0);
  const double phii = c.angle(i);
  if (phii >= phi0) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int j = 1; j < i; ++j) sum += prefix[j - 1] * std::sin(c.angle(j) - phi0);
  return -sum / std::sin(phii - phi0);
}

std::vector<double> complete_sides(const CaseSpec& c, std::span<const double> free) {
  const int m = c.free_count();
  std::vector<double> z(free.begin(), free.begin() + m);
  for (int k = 0; k < 2; ++k) {
    double v = 0.0;
    for (int j = 0; j < m; ++j) v += c.closing[k][j] * free[j];
    z.push_back(v);
  }
  return z;
}

std::array<double, 2> solve_closing(const CaseSpec& c, std::span<const double> free) {
  const auto d = side_directions(c);
  const int m = c.free_count();
  double sx = 0.0, sy = 0.0;
  for (int j = 0; j < m; ++j) {
    sx += free[j] * std::cos(d[j]);
    sy += free[j] * std::sin(d[j]);
  }
  // a * e(d_{n-1}) + b * e(d_n) = -(sx, sy)
  const Point e1{std::cos(d[m]), std::sin(d[m])};
  const Point e2{std::cos(d[m + 1]), std::sin(d[m + 1])};
  const double det = cross(e1, e2);
  const Point rhs{-sx, -sy};
  return {cross(rhs, e2) / det, cross(e1, rhs) / det};
}

bool in_region(const CaseSpec& c, std::span<const double> free) {
  for (int j = 0; j < c.free_count(); ++j) {
    if (!(free[j] > c.lower[j].eval(free) && free[j] < c.upper[j].eval(free))) return false;
  }
  return true;
}

std::array<double, kMaxFree> reduced_rates(const CaseSpec& c, const Weights& w) {
  const auto lam = side_lambdas(c, w);
  const int m = c.free_count();
  std::array<double, kMaxFree> a{};
  for (int j = 0; j < m; ++j) {
    a[j] = 0.5 * (lam[j] + lam[m] * c.closing[0][j] + lam[m + 1] * c.closing[1][j]);
  }
  return a;
}

double density_value(const CaseSpec& c, std::span<const double> free, const Weights& w) {
  if (!in_region(c, free)) return 0.0;
  const auto z = complete_sides(c, free);
  const auto lam = side_lambdas(c, w);
  double exponent = 0.0;
  for (int i = 0; i < c.n; ++i) exponent += z[i] * lam[i];
  return (2.0 / lambda_total(w)) * std::pow(0.5 * kSqrt3, c.n - 1) * std::exp(-0.5 * exponent);
}

Polygon case_polygon(const CaseSpec& c, std::span<const double> sides, Point start) {
  const auto d = side_directions(c);
  std::vector<Side> walk(c.n);
  for (int i = 0; i < c.n; ++i) walk[i] = {sides[i], d[i]};
  return Polygon::from_walk(start, std::move(walk));
}

} // namespace tripoly
