#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tripoly {

using Rational = boost::multiprecision::cpp_rational;

/// Renders a rational as "num/den", or "num" when the denominator is one.
std::string to_string(const Rational& value);

/// Parses "num/den", an integer, or a decimal literal ("0.25" -> 1/4).
Rational parse_rational(std::string_view text);

/// Weights (p, q, r = 1 - p - q) of the three direction families 0, pi/3, 2pi/3.
///
/// A Weights value is always valid: 0 < p, 0 < q and p + q < 1. When it was
/// constructed from exact fractions the rational values are kept alongside the
/// doubles so that closed-form evaluations can run in exact arithmetic.
class Weights {
public:
  Weights(double p, double q);
  Weights(const Rational& p, const Rational& q);

  /// Accepts "1/3" style fractions (exact path) or decimals (floating path).
  static Weights parse(std::string_view p, std::string_view q);

  double p() const { return p_; }
  double q() const { return q_; }
  double r() const { return 1.0 - p_ - q_; }

  /// Weight of direction family k in {0, 1, 2}.
  double family_weight(int k) const;

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact_p() const;
  const Rational& exact_q() const;
  Rational exact_r() const { return 1 - exact_p() - exact_q(); }

private:
  struct Exact {
    Rational p;
    Rational q;
  };

  double p_;
  double q_;
  std::optional<Exact> exact_;
};

} // namespace tripoly
