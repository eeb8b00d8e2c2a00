#include "tripoly/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tripoly {

double RandomStream::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be positive");
  return -std::log(uniform()) / rate;
}

double RandomStream::truncated_exponential(double rate, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("truncated exponential needs lo < hi");
  const double u = uniform();
  if (std::isinf(hi)) {
    if (!(rate > 0.0)) throw std::invalid_argument("unbounded truncated exponential needs a positive rate");
    return lo - std::log(u) / rate;
  }
  const double width = hi - lo;
  if (std::abs(rate) * width < 1e-12) return lo + u * width;
  // F^{-1}(u) = lo - log1p(u * expm1(-rate * width)) / rate, valid for either sign of rate.
  const double x = lo - std::log1p(u * std::expm1(-rate * width)) / rate;
  return std::min(std::max(x, lo), hi);
}

} // namespace tripoly
