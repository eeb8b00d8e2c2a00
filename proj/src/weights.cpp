#include "tripoly/weights.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "tripoly/errors.hpp"

namespace tripoly {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw ValidationError("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Rational(boost::multiprecision::cpp_int(std::string(s)));
}

void check_open_simplex(double p, double q) {
  if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0 && p + q < 1.0)) {
    throw ValidationError("weights must satisfy 0 < p, 0 < q, p + q < 1 (got p=" + std::to_string(p) +
                          ", q=" + std::to_string(q) + ")");
  }
}

} // namespace

std::string to_string(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ValidationError("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(trim(text.substr(0, slash)));
    Rational den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const Rational mantissa = parse_rational(text.substr(0, e));
    const std::string_view exp_text = text.substr(e + 1);
    if (!is_integer_literal(exp_text)) throw ValidationError("bad exponent in '" + std::string(text) + "'");
    const long exponent = std::stol(std::string(exp_text));
    if (exponent > 400 || exponent < -400) throw ValidationError("exponent out of range in '" + std::string(text) + "'");
    Rational scale = 1;
    for (long i = 0; i < std::abs(exponent); ++i) scale *= 10;
    return exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa / scale);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    if (!is_integer_literal(digits) || (!frac.empty() && !is_integer_literal(frac)) ||
        (!frac.empty() && (frac.front() == '-' || frac.front() == '+'))) {
      throw ValidationError("not a decimal: '" + std::string(text) + "'");
    }
    bool negative = digits.front() == '-';
    Rational whole = parse_integer(negative ? std::string_view(digits).substr(1) : std::string_view(digits));
    Rational scale = 1;
    Rational part = 0;
    if (!frac.empty()) {
      part = parse_integer(frac);
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    }
    Rational value = whole + part / scale;
    return negative ? Rational(-value) : value;
  }
  return parse_integer(text);
}

Weights::Weights(double p, double q) : p_(p), q_(q) { check_open_simplex(p, q); }

Weights::Weights(const Rational& p, const Rational& q)
    : p_(static_cast<double>(p)), q_(static_cast<double>(q)), exact_(Exact{p, q}) {
  if (!(p > 0 && q > 0 && p + q < 1)) {
    throw ValidationError("weights must satisfy 0 < p, 0 < q, p + q < 1 (got p=" + to_string(p) +
                          ", q=" + to_string(q) + ")");
  }
}

Weights Weights::parse(std::string_view p, std::string_view q) {
  auto is_fraction = [](std::string_view s) { return s.find('/') != std::string_view::npos; };
  if (is_fraction(p) || is_fraction(q)) {
    return Weights(parse_rational(p), parse_rational(q));
  }
  return Weights(static_cast<double>(parse_rational(p)), static_cast<double>(parse_rational(q)));
}

double Weights::family_weight(int k) const {
  switch (k) {
  case 0: return p_;
  case 1: return q_;
  case 2: return r();
  default: throw std::out_of_range("direction family index must be 0, 1 or 2");
  }
}

const Rational& Weights::exact_p() const {
  if (!exact_) throw std::logic_error("weights were not constructed from exact fractions");
  return exact_->p;
}

const Rational& Weights::exact_q() const {
  if (!exact_) throw std::logic_error("weights were not constructed from exact fractions");
  return exact_->q;
}

} // namespace tripoly
