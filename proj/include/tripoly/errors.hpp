#pragma once

#include <stdexcept>
#include <string>

namespace tripoly {

/// Invalid user-supplied parameters (weights outside the open simplex, bad
/// window, malformed fractions).
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An adaptive quadrature did not reach the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
  AccuracyError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const { return estimate_; }
  double error() const { return error_; }

private:
  double estimate_;
  double error_;
};

/// A Monte Carlo run produced no usable typical cells.
class EmptySampleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Near-concurrent or coincident lines in an arrangement; the caller resamples.
class DegenerateInputError : public std::runtime_error {
public:
  DegenerateInputError(const std::string& what, int first, int second)
      : std::runtime_error(what), first_(first), second_(second) {}

  int first_line() const { return first_; }
  int second_line() const { return second_; }

private:
  int first_;
  int second_;
};

/// The typical-cell rejection sampler exceeded its rejection budget.
class SamplerStallError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tripoly
