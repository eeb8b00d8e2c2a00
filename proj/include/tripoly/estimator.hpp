#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tripoly/arrangement.hpp"
#include "tripoly/line_process.hpp"

namespace tripoly {

/// z for a two-sided 99% normal interval.
inline constexpr double kZ99 = 2.5758293035489004;
/// Boundary-discard ratio above which a report is flagged.
inline constexpr double kDiscardThreshold = 1e-3;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double half_width() const { return 0.5 * (hi - lo); }
};

/// Wilson score interval for k successes out of n trials.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z);
/// Same interval for an observed proportion over a (possibly fractional) effective sample size.
Interval wilson_interval_effective(double proportion, double n, double z);

/// Vertex-count tally of one window.
struct CellCounts {
  std::array<std::uint64_t, 4> counts{}; // n = 3..6
  std::uint64_t discarded_boundary_cells = 0;

  std::uint64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
  CellCounts& operator+=(const CellCounts& o);
};

/// Counts the interior faces whose lex-min vertex lies in the inner box
/// [-R f, R f)^2; faces there that touch the window edge are tallied as discarded.
/// Throws std::logic_error for an interior face outside 3..6 vertices.
CellCounts count_typical_cells(const Arrangement& arrangement);

struct PmfReport {
  Weights weights{1.0 / 3.0, 1.0 / 3.0};
  Window window;
  std::uint64_t seed = 0;
  int replicates = 0;
  CellCounts tally;
  std::array<double, 4> estimates{};
  // Cells of one window share lines, so their counts are overdispersed. The
  // standard errors come from the spread between replicates (a ratio-estimator
  // variance) and never drop below the binomial value; the design effect is
  // their squared ratio to it, and the Wilson intervals use total / design effect.
  std::array<double, 4> std_errors{};
  std::array<double, 4> design_effects{1.0, 1.0, 1.0, 1.0};
  std::array<Interval, 4> ci99{};
  std::vector<std::uint64_t> seeds; // realization seed actually used per replicate
  std::uint64_t degenerate_retries = 0;
  double wall_time_ms = 0.0;

  std::uint64_t total() const { return tally.total(); }
  double effective_cells(int k) const { return static_cast<double>(total()) / design_effects[k]; }
  double discard_ratio() const;
  bool boundary_flagged() const { return discard_ratio() > kDiscardThreshold; }
};

struct EstimatorOptions {
  int replicates = 1;         // lower bound on replicates
  std::uint64_t min_cells = 0; // keep adding replicates until this many usable cells
  unsigned threads = 0;       // 0: hardware concurrency
};

/// Monte Carlo estimate of the vertex-number distribution from independent
/// windows. Replicate i uses a seed derived from (seed, i) only, so results do
/// not depend on the number of threads. Throws EmptySampleError without usable cells.
PmfReport estimate_pmf(const Weights& w, const Window& window, int replicates, std::uint64_t seed,
                       unsigned threads = 0);
PmfReport estimate_pmf(const Weights& w, const Window& window, const EstimatorOptions& options, std::uint64_t seed);

/// Plug-in mean sum n p_n and variance sum n^2 p_n - mean^2.
std::pair<double, double> empirical_mean_variance(const PmfReport& report);

/// Seed of replicate `index` after `attempt` degenerate draws.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt);

nlohmann::json to_json(const PmfReport& report, bool include_timing = false);

} // namespace tripoly
