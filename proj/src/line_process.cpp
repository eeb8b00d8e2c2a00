#include "tripoly/line_process.hpp"

#include <cmath>

#include "tripoly/errors.hpp"
#include "tripoly/rng.hpp"

namespace tripoly {

namespace {
constexpr double kDuplicateOffset = 1e-12;
}

Window::Window(double half_width, double inner_fraction) : half_width(half_width), inner_fraction(inner_fraction) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw ValidationError("window half-width must be positive");
  if (!(inner_fraction > 0.0 && inner_fraction < 1.0)) throw ValidationError("inner fraction must lie in (0, 1)");
}

LineRealization sample_lines(const Weights& w, const Window& window, std::uint64_t seed) {
  LineRealization out{{}, w, window, seed};
  const RandomStream root(seed);
  const double bound = window.offset_bound();
  int next_id = 0;
  for (int k = 0; k < 3; ++k) {
    RandomStream stream = root.split(static_cast<std::uint64_t>(k));
    const double rate = w.family_weight(k);
    // Homogeneous Poisson process on [-bound, bound] via exponential gaps.
    double t = -bound;
    while (true) {
      double gap = stream.exponential(rate);
      while (gap < kDuplicateOffset) gap = stream.exponential(rate);
      t += gap;
      if (t > bound) break;
      out.lines.push_back({CanonicalAngle(k), t, next_id++});
    }
  }
  return out;
}

double expected_cells_in_box(const Weights& w, const Window& window) {
  const double p = w.p();
  const double q = w.q();
  const double r = w.r();
  return 0.5 * kSqrt3 * (p * q + q * r + r * p) * window.inner_area();
}

nlohmann::json to_json(const LineRealization& realization) {
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& line : realization.lines) {
    lines.push_back({{"family", line.family.index()}, {"offset", line.offset}});
  }
  nlohmann::json weights = {{"p", realization.weights.p()}, {"q", realization.weights.q()}};
  if (realization.weights.is_exact()) {
    weights["p_exact"] = to_string(realization.weights.exact_p());
    weights["q_exact"] = to_string(realization.weights.exact_q());
  }
  return {{"schema_version", 1},
          {"seed", realization.seed},
          {"R", realization.window.half_width},
          {"inner_fraction", realization.window.inner_fraction},
          {"weights", weights},
          {"lines", lines}};
}

LineRealization realization_from_json(const nlohmann::json& j) {
  const auto& jw = j.at("weights");
  Weights w = jw.contains("p_exact")
                  ? Weights(parse_rational(jw.at("p_exact").get<std::string>()),
                            parse_rational(jw.at("q_exact").get<std::string>()))
                  : Weights(jw.at("p").get<double>(), jw.at("q").get<double>());
  Window window(j.at("R").get<double>(), j.value("inner_fraction", 0.25));
  LineRealization out{{}, w, window, j.at("seed").get<std::uint64_t>()};
  int id = 0;
  for (const auto& jl : j.at("lines")) {
    out.lines.push_back({CanonicalAngle(jl.at("family").get<int>()), jl.at("offset").get<double>(), id++});
  }
  return out;
}

} // namespace tripoly
