#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "tripoly/errors.hpp"

namespace tripoly::quad {

/// A value with an absolute error bound. Integrands may return Estimates so
/// that the error of an inner integral is carried through the outer one.
struct Estimate {
  double value = 0.0;
  double error = 0.0;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
  friend Estimate operator*(double s, const Estimate& e) { return {s * e.value, std::abs(s) * e.error}; }
};

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 400;
};

namespace detail {

// 21-point Gauss-Kronrod nodes (positive half) with the embedded 10-point Gauss weights.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.0};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208842297123, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                              0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                              0.295524224714752870173892994651338};

struct Segment {
  double a, b;
  Estimate result;
  double rule_error;
  friend bool operator<(const Segment& x, const Segment& y) { return x.rule_error < y.rule_error; }
};

// One G10K21 panel. The error of the panel combines the Gauss/Kronrod difference
// with QUADPACK's rescaling, plus the integrated errors reported by f itself.
template <class F> Segment panel(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const Estimate fc = f(centre);
  double resk = fc.value * kWgk[10];
  double resg = 0.0;
  double inner = fc.error * kWgk[10];
  double resabs = std::abs(resk);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const Estimate lo = f(centre - dx);
    const Estimate hi = f(centre + dx);
    f1[j] = lo.value;
    f2[j] = hi.value;
    resk += kWgk[j] * (lo.value + hi.value);
    inner += kWgk[j] * (lo.error + hi.error);
    resabs += kWgk[j] * (std::abs(lo.value) + std::abs(hi.value));
    if (j % 2 == 1) resg += kWg[j / 2] * (lo.value + hi.value);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc.value - reskh);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, {resk, inner * std::abs(half)}, err};
}

} // namespace detail

/// Adaptive G10K21 on a finite interval [a, b]. f maps double -> Estimate.
/// Throws AccuracyError when the tolerance is not reached within max_intervals.
template <class F> Estimate integrate(F&& f, double a, double b, const Options& opt = {}) {
  if (!(b > a)) return {};
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::panel(f, a, b));
  double total = heap.top().result.value;
  double rule_err = heap.top().rule_error;
  double inner_err = heap.top().result.error;
  int intervals = 1;
  while (rule_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (intervals >= opt.max_intervals) {
      throw AccuracyError("adaptive quadrature did not converge", total, rule_err + inner_err);
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    detail::Segment left = detail::panel(f, worst.a, mid);
    detail::Segment right = detail::panel(f, mid, worst.b);
    total += left.result.value + right.result.value - worst.result.value;
    rule_err += left.rule_error + right.rule_error - worst.rule_error;
    inner_err += left.result.error + right.result.error - worst.result.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running totals.
  total = 0.0;
  rule_err = 0.0;
  inner_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().result.value;
    rule_err += heap.top().rule_error;
    inner_err += heap.top().result.error;
    heap.pop();
  }
  return {total, rule_err + inner_err};
}

/// Integral of f over [lo, infinity) through u = exp(-kappa (z - lo)), which maps
/// the axis onto (0, 1]. Choose kappa no larger than the decay rate of f so the
/// mapped integrand stays bounded.
template <class F> Estimate integrate_to_infinity(F&& f, double lo, double kappa, const Options& opt = {}) {
  auto mapped = [&](double u) -> Estimate {
    const double z = lo - std::log(u) / kappa;
    const Estimate v = f(z);
    const double jac = 1.0 / (kappa * u);
    return jac * v;
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

/// Closed form of the integral of exp(-a z) over [lo, hi]; hi may be infinite when a > 0.
inline double exp_integral(double a, double lo, double hi) {
  if (std::isinf(hi)) return std::exp(-a * lo) / a;
  const double w = hi - lo;
  if (!(w > 0.0)) return 0.0;
  if (std::abs(a * w) < 1e-300) return w * std::exp(-a * lo);
  return std::exp(-a * lo) * (-std::expm1(-a * w)) / a;
}

} // namespace tripoly::quad
