#include "tripoly/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "tripoly/errors.hpp"
#include "tripoly/rng.hpp"

namespace tripoly {

namespace {

constexpr int kMaxDegenerateAttempts = 100;

struct ReplicateResult {
  CellCounts counts;
  std::uint64_t seed = 0;
  std::uint64_t attempts = 0;
};

ReplicateResult run_replicate(const Weights& w, const Window& window, std::uint64_t seed, std::uint64_t index) {
  for (std::uint64_t attempt = 0; attempt < kMaxDegenerateAttempts; ++attempt) {
    const std::uint64_t s = replicate_seed(seed, index, attempt);
    try {
      const Arrangement arr = build(sample_lines(w, window, s));
      return {count_typical_cells(arr), s, attempt};
    } catch (const DegenerateInputError&) {
      // probability-zero configuration; redraw
    }
  }
  throw std::runtime_error("replicate " + std::to_string(index) + " stayed degenerate after repeated redraws");
}

void run_range(const Weights& w, const Window& window, std::uint64_t seed, std::size_t first,
               std::vector<ReplicateResult>& out, unsigned threads) {
  const std::size_t count = out.size() - first;
  if (count == 0) return;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = first; i < out.size(); ++i) out[i] = run_replicate(w, window, seed, i);
    return;
  }
  std::atomic<std::size_t> next{first};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= out.size()) return;
      try {
        out[i] = run_replicate(w, window, seed, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = out.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

} // namespace

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  return wilson_interval_effective(static_cast<double>(k) / static_cast<double>(n), static_cast<double>(n), z);
}

Interval wilson_interval_effective(double ph, double nn, double z) {
  if (!(nn > 0.0)) return {0.0, 1.0};
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (ph + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

CellCounts& CellCounts::operator+=(const CellCounts& o) {
  for (int k = 0; k < 4; ++k) counts[k] += o.counts[k];
  discarded_boundary_cells += o.discarded_boundary_cells;
  return *this;
}

CellCounts count_typical_cells(const Arrangement& arrangement) {
  const double a = arrangement.window().inner_half_width();
  CellCounts out;
  for (const Face& face : arrangement.faces()) {
    const Point m = face.lex_min;
    if (!(m.x >= -a && m.x < a && m.y >= -a && m.y < a)) continue;
    if (face.touches_boundary) {
      ++out.discarded_boundary_cells;
      continue;
    }
    if (face.vertex_count < 3 || face.vertex_count > 6) {
      throw std::logic_error("interior face with " + std::to_string(face.vertex_count) + " vertices");
    }
    ++out.counts[face.vertex_count - 3];
  }
  return out;
}

double PmfReport::discard_ratio() const {
  const auto t = total();
  if (t == 0) return tally.discarded_boundary_cells > 0 ? 1.0 : 0.0;
  return static_cast<double>(tally.discarded_boundary_cells) / static_cast<double>(t);
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  return RandomStream(seed, index).split(attempt).key();
}

PmfReport estimate_pmf(const Weights& w, const Window& window, int replicates, std::uint64_t seed, unsigned threads) {
  return estimate_pmf(w, window, EstimatorOptions{replicates, 0, threads}, seed);
}

PmfReport estimate_pmf(const Weights& w, const Window& window, const EstimatorOptions& options, std::uint64_t seed) {
  if (options.replicates < 1) throw ValidationError("replicates must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());

  std::vector<ReplicateResult> results(static_cast<std::size_t>(options.replicates));
  run_range(w, window, seed, 0, results, threads);
  CellCounts tally;
  for (const auto& r : results) tally += r.counts;

  // Further rounds, sized from the yield so far; all sizes depend only on counts.
  while (tally.total() < options.min_cells) {
    const double per_replicate = static_cast<double>(tally.total()) / static_cast<double>(results.size());
    const double missing = static_cast<double>(options.min_cells - tally.total());
    std::size_t extra = per_replicate > 0.0 ? static_cast<std::size_t>(std::ceil(1.05 * missing / per_replicate))
                                            : results.size();
    extra = std::clamp<std::size_t>(extra, 1, std::max<std::size_t>(results.size() * 4, 1));
    const std::size_t first = results.size();
    results.resize(first + extra);
    run_range(w, window, seed, first, results, threads);
    for (std::size_t i = first; i < results.size(); ++i) tally += results[i].counts;
  }

  PmfReport report;
  report.weights = w;
  report.window = window;
  report.seed = seed;
  report.replicates = static_cast<int>(results.size());
  report.tally = tally;
  for (const auto& r : results) {
    report.seeds.push_back(r.seed);
    report.degenerate_retries += r.attempts;
  }
  const std::uint64_t n = tally.total();
  if (n == 0) {
    throw EmptySampleError("no usable typical cells; enlarge the window (--window-R) or add replicates");
  }
  const double total = static_cast<double>(n);
  const double m = static_cast<double>(results.size());
  for (int k = 0; k < 4; ++k) {
    const double ph = static_cast<double>(tally.counts[k]) / total;
    const double binomial = ph * (1.0 - ph) / total;
    double between = 0.0;
    if (results.size() > 1) {
      for (const auto& r : results) {
        const double d = static_cast<double>(r.counts.counts[k]) - ph * static_cast<double>(r.counts.total());
        between += d * d;
      }
      between *= m / ((m - 1.0) * total * total);
    }
    const double var = std::max(binomial, between);
    report.estimates[k] = ph;
    report.std_errors[k] = std::sqrt(var);
    report.design_effects[k] = binomial > 0.0 ? var / binomial : 1.0;
    report.ci99[k] = wilson_interval_effective(ph, report.effective_cells(k), kZ99);
  }
  report.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::pair<double, double> empirical_mean_variance(const PmfReport& report) {
  double mean = 0.0;
  double second = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double n = k + 3;
    mean += n * report.estimates[k];
    second += n * n * report.estimates[k];
  }
  return {mean, second - mean * mean};
}

nlohmann::json to_json(const PmfReport& report, bool include_timing) {
  using nlohmann::json;
  json counts = json::object();
  json estimates = json::object();
  json errors = json::object();
  json deff = json::object();
  json ci = json::object();
  for (int k = 0; k < 4; ++k) {
    const std::string key = std::to_string(k + 3);
    counts[key] = report.tally.counts[k];
    estimates[key] = report.estimates[k];
    errors[key] = report.std_errors[k];
    deff[key] = report.design_effects[k];
    ci[key] = {report.ci99[k].lo, report.ci99[k].hi};
  }
  const auto [mean, var] = empirical_mean_variance(report);
  json weights = {{"p", report.weights.p()}, {"q", report.weights.q()}, {"r", report.weights.r()}};
  if (report.weights.is_exact()) {
    weights["p_exact"] = to_string(report.weights.exact_p());
    weights["q_exact"] = to_string(report.weights.exact_q());
  }
  json out = {{"schema_version", 1},
              {"weights", weights},
              {"window", {{"R", report.window.half_width}, {"inner_fraction", report.window.inner_fraction}}},
              {"seed", report.seed},
              {"replicates", report.replicates},
              {"total", report.total()},
              {"counts", counts},
              {"estimates", estimates},
              {"std_errors", errors},
              {"design_effects", deff},
              {"ci99", ci},
              {"mean", mean},
              {"variance", var},
              {"discarded_boundary_cells", report.tally.discarded_boundary_cells},
              {"discard_ratio", report.discard_ratio()},
              {"boundary_flag", report.boundary_flagged()},
              {"degenerate_retries", report.degenerate_retries},
              {"seeds", report.seeds}};
  if (include_timing) out["wall_time_ms"] = report.wall_time_ms;
  return out;
}

} // namespace tripoly
