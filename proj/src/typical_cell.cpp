#include "tripoly/typical_cell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tripoly/errors.hpp"

namespace tripoly {

namespace {

class NestedIntegral {
public:
  NestedIntegral(const CaseSpec& c, const Weights& w) : c_(c), rates_(reduced_rates(c, w)) {
    const auto lam = side_lambdas(c, w);
    for (int j = 0; j < c.free_count(); ++j) kappa_[j] = 0.5 * lam[j];
    inner_.abs_tol = 1e-14;
    inner_.rel_tol = 1e-12;
    outer_.abs_tol = 1e-13;
    outer_.rel_tol = 1e-12;
  }

  // Integral of exp(-sum_j a_j z_j) over the case region.
  quad::Estimate run() { return level(0, 0.0); }

private:
  quad::Estimate level(int k, double exponent) {
    const int m = c_.free_count();
    const int v = c_.order[k];
    const double lo = std::max(0.0, c_.lower[v].eval(z_));
    const double hi = c_.upper[v].eval(z_);
    if (!(hi > lo)) return {};
    const double a = rates_[v];

    if (k == m - 1) {
      // exp(-exponent) * integral_lo^hi exp(-a z) dz, in one exponential.
      const double base = std::exp(-exponent - a * lo);
      if (std::isinf(hi)) return {base / a, 0.0};
      const double width = hi - lo;
      const double x = a * width;
      return {std::abs(x) < 1e-300 ? base * width : base * (-std::expm1(-x)) / a, 0.0};
    }

    auto f = [&](double zv) -> quad::Estimate {
      z_[v] = zv;
      const quad::Estimate r = level(k + 1, exponent + a * zv);
      z_[v] = 0.0;
      return r;
    };
    const quad::Options& opt = k == 0 ? outer_ : inner_;
    if (std::isinf(hi)) return quad::integrate_to_infinity(f, lo, kappa_[v], opt);
    return quad::integrate(f, lo, hi, opt);
  }

  const CaseSpec& c_;
  std::array<double, kMaxFree> rates_{};
  std::array<double, kMaxFree> kappa_{};
  std::array<double, kMaxFree> z_{};
  quad::Options inner_;
  quad::Options outer_;
};

} // namespace

quad::Estimate integrate_case(const CaseSpec& c, const Weights& w, double tolerance) {
  NestedIntegral integral(c, w);
  const quad::Estimate raw = integral.run();
  const double scale = angle_probability(c, w) * (2.0 / lambda_total(w)) * std::pow(0.5 * kSqrt3, c.n - 1);
  const quad::Estimate out = scale * raw;
  if (!(out.error <= tolerance)) {
    throw AccuracyError("quadrature for case " + c.id + " missed the requested accuracy", out.value, out.error);
  }
  return out;
}

QuadraturePmf pmf_by_quadrature(const Weights& w, double tolerance) {
  QuadraturePmf out;
  for (const auto& c : all_cases()) {
    const quad::Estimate e = integrate_case(c, w, tolerance);
    out.cases.push_back({&c, e});
    out.pmf[c.n - 3] += e.value;
    out.error[c.n - 3] += e.error;
    if (c.subtype == QuadSubtype::para) out.para += e.value;
    if (c.subtype == QuadSubtype::trap) out.trap += e.value;
  }
  return out;
}

TypicalCellSampler::TypicalCellSampler(const Weights& w) : TypicalCellSampler(w, pmf_by_quadrature(w)) {}

TypicalCellSampler::TypicalCellSampler(const Weights& w, const QuadraturePmf& probabilities) : w_(w) {
  double total = 0.0;
  for (const auto& r : probabilities.cases) {
    probs_.push_back(r.probability.value);
    total += r.probability.value;
    cumulative_.push_back(total);
  }
  for (auto& c : cumulative_) c /= total;
}

CellSample TypicalCellSampler::sample(RandomStream& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const std::size_t idx = std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
  return sample_case(all_cases()[idx], rng);
}

CellSample TypicalCellSampler::sample_case(const CaseSpec& c, RandomStream& rng) const {
  const int m = c.free_count();
  const auto rates = reduced_rates(c, w_);
  const auto lam = side_lambdas(c, w_);
  bool direct = true;
  for (int j = 0; j < m; ++j) direct = direct && rates[j] > 0.0;

  std::array<double, kMaxFree> free{};
  const std::span<const double> fs(free.data(), m);
  std::uint64_t rejections = 0;
  while (true) {
    if (rejections > kMaxRejections) {
      throw SamplerStallError("typical-cell sampler stalled in case " + c.id + " (" + c.symbol + ")");
    }
    if (direct) {
      // Independent exponentials with the reduced rates: accept iff inside the region.
      for (int j = 0; j < m; ++j) free[j] = rng.exponential(rates[j]);
      if (in_region(c, fs)) break;
    } else {
      // Envelope from the free sides' own factors; the two closing sides thin it.
      for (int j = 0; j < m; ++j) free[j] = rng.exponential(0.5 * lam[j]);
      if (in_region(c, fs)) {
        const auto z = complete_sides(c, fs);
        const double accept = std::exp(-0.5 * (lam[m] * z[m] + lam[m + 1] * z[m + 1]));
        if (rng.uniform() < accept) break;
      }
    }
    ++rejections;
  }

  CellSample s;
  s.spec = &c;
  s.z = complete_sides(c, fs);
  s.polygon = case_polygon(c, s.z);
  s.density = density_value(c, fs, w_);
  s.rejections = rejections;
  if (!(closing_residual(s.polygon) < kClosureTolerance) || !s.polygon.is_convex_simple()) {
    throw std::logic_error("sampled cell of case " + c.id + " is not a closed convex polygon");
  }
  return s;
}

CellSample sample_typical_cell(const Weights& w, std::uint64_t seed) {
  const TypicalCellSampler sampler(w);
  RandomStream rng(seed);
  return sampler.sample(rng);
}

} // namespace tripoly
