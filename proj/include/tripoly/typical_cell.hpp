#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tripoly/cell_cases.hpp"
#include "tripoly/quadrature.hpp"
#include "tripoly/rng.hpp"

namespace tripoly {

/// Requested absolute accuracy of one case probability.
inline constexpr double kCaseTolerance = 1e-10;

/// Probability of one case: the angle-tuple weight times the integral of the
/// typical-cell density over the case's limit region. Nested adaptive G10K21,
/// outermost variable first; the innermost exponential integral is closed form.
/// Throws AccuracyError when the error estimate exceeds `tolerance`.
quad::Estimate integrate_case(const CaseSpec& c, const Weights& w, double tolerance = kCaseTolerance);

struct CaseResult {
  const CaseSpec* spec = nullptr;
  quad::Estimate probability;
};

struct QuadraturePmf {
  std::array<double, 4> pmf{};   // n = 3..6
  std::array<double, 4> error{}; // summed case error estimates
  double para = 0.0;
  double trap = 0.0;
  std::vector<CaseResult> cases; // table order
};

QuadraturePmf pmf_by_quadrature(const Weights& w, double tolerance = kCaseTolerance);

struct CellSample {
  const CaseSpec* spec = nullptr;
  std::vector<double> z; // all n side lengths
  Polygon polygon;       // walked clockwise from the lowest vertex at the origin
  double density = 0.0;
  std::uint64_t rejections = 0;
};

/// Draws typical cells: a case with probability proportional to its integral,
/// then the free sides by exact rejection from exponential proposals.
class TypicalCellSampler {
public:
  explicit TypicalCellSampler(const Weights& w);
  /// Reuses case probabilities that were already computed for w.
  TypicalCellSampler(const Weights& w, const QuadraturePmf& probabilities);

  CellSample sample(RandomStream& rng) const;
  /// Draws the free sides of one case, conditioned on that case.
  CellSample sample_case(const CaseSpec& c, RandomStream& rng) const;

  const std::vector<double>& case_probabilities() const { return probs_; }

  static constexpr std::uint64_t kMaxRejections = 1'000'000;

private:
  Weights w_;
  std::vector<double> probs_; // aligned with all_cases()
  std::vector<double> cumulative_;
};

CellSample sample_typical_cell(const Weights& w, std::uint64_t seed);

} // namespace tripoly
