#pragma once

#include <array>
#include <string>
#include <vector>

#include "tripoly/weights.hpp"

namespace tripoly::analytic {

// Everything here is a rational function of (p, q). T is double or Rational.

template <class T> T beta(const T& p, const T& q) {
  return (1 - p) * (1 - q) * (p + q) * (p + q - p * p - q * q - p * q);
}

/// p + q - p^2 - q^2 - pq, which equals pq + qr + rp.
template <class T> T pair_sum(const T& p, const T& q) { return p + q - p * p - q * q - p * q; }

/// Probabilities of n = 3, 4, 5, 6, in that order.
template <class T> std::array<T, 4> pmf(const T& p, const T& q) {
  const T r = 1 - p - q;
  const T b = beta(p, q);
  const T pq = p * q;
  const T s = p + q;
  const T p3 = 2 * pq * (1 - p) * (1 - q) * s * r;
  const T p4 = 6 * pq * pq * s * s + 2 * pq * (12 * pq + 1) - 22 * pq * pq * s -
               p * p * (5 * p * p * q - 12 * pq + 2 * p + 9 * q - p * p - 1) -
               q * q * (5 * p * q * q - 12 * pq + 2 * q + 9 * p - q * q - 1);
  const T p5 = 6 * pq * pq * s * r - 2 * pq * r * (p * p + q * q) + 2 * pq * s * r - 8 * pq * pq * r;
  const T p6 = 2 * pq * pq * r * r;
  return {p3 / b, p4 / b, p5 / b, p6 / b};
}

/// One of the two triangle configurations; twice this is P(N = 3).
template <class T> T triangle_case(const T& p, const T& q) {
  return p * q * (1 - p - q) / pair_sum(p, q);
}

/// The trapezoid whose second side must be at least as long as the first.
template <class T> T trapezoid_case4(const T& p, const T& q) {
  return p * p * q * (1 - p - q) / ((1 - p) * pair_sum(p, q));
}

template <class T> T pentagon_case5(const T& p, const T& q) {
  const T r = 1 - p - q;
  return 3 * p * q * q * r * r / ((3 - 3 * q) * (p + q) * (-p * p - p * q + p - q * q + q));
}

/// Parallelogram share of P(N = 4), the sum of the three parallelogram cases.
template <class T> T para(const T& p, const T& q) {
  const T num = p * p * p * p * (1 - q) - 2 * p * p * p * (q - 1) * (q - 1) + q * q * (1 - p) * (q - 1) * (q - 1) +
                2 * p * q * q * (q - 1) + p * p * (-2 * q * q * q + 6 * q * q - 3 * q + 1);
  return num / beta(p, q);
}

/// Trapezoid share of P(N = 4), i.e. P(N = 4) minus the parallelogram share.
template <class T> T trap(const T& p, const T& q) {
  const T r = 1 - p - q;
  const T poly = 1 - 2 * p - 2 * q + 2 * p * p + 2 * q * q + 5 * p * q - 3 * p * p * q - 3 * p * q * q;
  return 2 * p * q * r * poly / beta(p, q);
}

template <class T> T variance(const T& p, const T& q) {
  const T r = 1 - p - q;
  return 4 * p * q * r / ((1 - p) * (1 - q) * (p + q));
}

template <class T> T moment(const std::array<T, 4>& probs, int power) {
  T out = 0;
  for (int k = 0; k < 4; ++k) {
    T n = k + 3;
    T term = 1;
    for (int i = 0; i < power; ++i) term *= n;
    out += term * probs[k];
  }
  return out;
}

template <class T> struct Formulas {
  T p, q;
  T beta;
  std::array<T, 4> pmf;
  T para, trap;
  T mean;
  T variance;
};

template <class T> Formulas<T> evaluate(const T& p, const T& q) {
  Formulas<T> f{p, q, beta(p, q), pmf(p, q), para(p, q), trap(p, q), T(0), variance(p, q)};
  f.mean = moment(f.pmf, 1);
  return f;
}

double to_double(const Rational& x);

/// Float formulas for any Weights; exact formulas are available when w.is_exact().
Formulas<double> evaluate(const Weights& w);
Formulas<Rational> evaluate_exact(const Weights& w);

struct ExtremumResult {
  int component = 3;      // n
  bool maximize = true;
  Rational p, q;          // location of the extremum found
  Rational value;
  bool at_expected = false; // located at the grid point nearest (1/3, 1/3)
  bool strict = false;      // every other grid point is strictly worse
};

struct ExtremaReport {
  Rational step;
  Rational expected_p, expected_q;
  std::size_t grid_points = 0;
  std::vector<ExtremumResult> results; // n = 3, 4, 5, 6
  bool ok() const;
};

/// Scans {(i s, j s) : i, j >= 1, (i + j) s < 1} in exact arithmetic and checks
/// that p3, p5, p6 peak and p4 bottoms out at the grid point nearest (1/3, 1/3).
/// Throws ValidationError unless 0 < step <= 1/10.
ExtremaReport verify_extrema(const Rational& step);

} // namespace tripoly::analytic
