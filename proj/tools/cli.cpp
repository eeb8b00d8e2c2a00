#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tripoly/analytic.hpp"
#include "tripoly/errors.hpp"
#include "tripoly/estimator.hpp"
#include "tripoly/svg.hpp"
#include "tripoly/typical_cell.hpp"

namespace tripoly::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string p = "1/3";
  std::string q = "1/3";
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format;
  std::string config;
  double window_R = 60.0;
  double inner_frac = 0.25;
  int replicates = 1;
  std::uint64_t min_cells = 100000;
  unsigned threads = 0;
  bool timing = false;
  std::string step = "1/20";
  std::string component = "p3";
  int count = 4;
};

void add_common(CLI::App* cmd, RunConfig& cfg, const std::string& formats) {
  cmd->add_option("--p", cfg.p, "weight of direction 0, as a fraction (1/3) or decimal")->capture_default_str();
  cmd->add_option("--q", cfg.q, "weight of direction pi/3")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", cfg.out, "output file (default: stdout)");
  cmd->add_option("--format", cfg.format, "output format: " + formats);
  cmd->add_option("--config", cfg.config, "JSON config file; explicit flags take precedence");
}

// Config keys and the flags that override them.
const std::map<std::string, std::string> kConfigFlags = {
    {"p", "--p"},           {"q", "--q"},
    {"seed", "--seed"},     {"out", "--out"},
    {"format", "--format"}, {"window_R", "--window-R"},
    {"inner_frac", "--inner-frac"}, {"replicates", "--replicates"},
    {"min_cells", "--min-cells"},   {"threads", "--threads"},
    {"timing", "--timing"}, {"step", "--step"},
    {"component", "--component"},   {"count", "--count"}};

void apply_config(RunConfig& cfg, const CLI::App& cmd) {
  if (cfg.config.empty()) return;
  std::ifstream in(cfg.config);
  if (!in) throw ValidationError("cannot read config file " + cfg.config);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed config file: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
  auto explicit_flag = [&](const std::string& key) {
    const auto it = kConfigFlags.find(key);
    if (it == kConfigFlags.end()) return false;
    const CLI::Option* opt = cmd.get_option_no_throw(it->second);
    return opt != nullptr && opt->count() > 0;
  };
  auto as_string = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  for (const auto& [key, value] : j.items()) {
    if (explicit_flag(key)) continue;
    try {
      if (key == "p") cfg.p = as_string(value);
      else if (key == "q") cfg.q = as_string(value);
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "format") cfg.format = value.get<std::string>();
      else if (key == "window_R") cfg.window_R = value.get<double>();
      else if (key == "inner_frac") cfg.inner_frac = value.get<double>();
      else if (key == "replicates") cfg.replicates = value.get<int>();
      else if (key == "min_cells") cfg.min_cells = value.get<std::uint64_t>();
      else if (key == "threads") cfg.threads = value.get<unsigned>();
      else if (key == "timing") cfg.timing = value.get<bool>();
      else if (key == "step") cfg.step = as_string(value);
      else if (key == "component") cfg.component = value.get<std::string>();
      else if (key == "count") cfg.count = value.get<int>();
      else if (key != "command") throw ValidationError("unknown config key " + key);
    } catch (const json::exception& e) {
      throw ValidationError("config key " + key + ": " + e.what());
    }
  }
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw ValidationError("unsupported --format " + cfg.format + " (expected " + list + ")");
}

// Writes to --out when given, else to the command's stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw ValidationError("cannot write " + cfg.out);
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Weights parse_weights(const RunConfig& cfg) { return Weights::parse(cfg.p, cfg.q); }

const char* kComponents[] = {"p3", "p4", "p5", "p6", "para", "trap"};

// ---------------------------------------------------------------- formula

template <class T> json value_json(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) return to_string(v);
  else return v;
}

template <class T> json formula_json(const analytic::Formulas<T>& f, bool exact) {
  json pmf = json::object();
  for (int k = 0; k < 4; ++k) pmf[std::to_string(k + 3)] = value_json(f.pmf[k]);
  return {{"schema_version", 1},   {"exact", exact},          {"p", value_json(f.p)},
          {"q", value_json(f.q)},  {"r", value_json(T(1 - f.p - f.q))},
          {"beta", value_json(f.beta)}, {"pmf", pmf},        {"para", value_json(f.para)},
          {"trap", value_json(f.trap)}, {"mean", value_json(f.mean)}, {"variance", value_json(f.variance)}};
}

int cmd_formula(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"json", "csv"});
  const Weights w = parse_weights(cfg);
  json j = w.is_exact() ? formula_json(analytic::evaluate_exact(w), true) : formula_json(analytic::evaluate(w), false);
  if (cfg.format == "json") {
    emit(cfg, out, dump(j));
    return kOk;
  }
  auto cell = [](const json& v) { return v.is_string() ? v.get<std::string>() : csv_number(v.get<double>()); };
  std::string text = "p,q,beta,p3,p4,p5,p6,para,trap,mean,variance\n";
  text += cell(j["p"]) + "," + cell(j["q"]) + "," + cell(j["beta"]);
  for (int n = 3; n <= 6; ++n) text += "," + cell(j["pmf"][std::to_string(n)]);
  text += "," + cell(j["para"]) + "," + cell(j["trap"]) + "," + cell(j["mean"]) + "," + cell(j["variance"]) + "\n";
  emit(cfg, out, text);
  return kOk;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_format(cfg, {"json", "csv"});
  const Weights w = parse_weights(cfg);
  const Window window(cfg.window_R, cfg.inner_frac);
  if (cfg.replicates < 1) throw ValidationError("--replicates must be at least 1");
  EstimatorOptions opts{cfg.replicates, cfg.min_cells, cfg.threads};
  const PmfReport report = estimate_pmf(w, window, opts, cfg.seed);
  const auto exact = analytic::pmf(w.p(), w.q());

  std::array<double, 4> z{};
  for (int k = 0; k < 4; ++k) {
    const double se = std::sqrt(exact[k] * (1.0 - exact[k]) / report.effective_cells(k));
    z[k] = se > 0 ? (report.estimates[k] - exact[k]) / se : 0.0;
  }
  if (report.boundary_flagged()) {
    err << "warning: boundary-discard ratio " << report.discard_ratio() << " exceeds " << kDiscardThreshold
        << "; enlarge --window-R or lower --inner-frac\n";
  }

  if (cfg.format == "json") {
    json j = to_json(report, cfg.timing);
    json an = json::object(), zs = json::object();
    for (int k = 0; k < 4; ++k) {
      an[std::to_string(k + 3)] = exact[k];
      zs[std::to_string(k + 3)] = z[k];
    }
    j["analytic"] = an;
    j["z_scores"] = zs;
    j["analytic_variance"] = analytic::variance(w.p(), w.q());
    emit(cfg, out, dump(j));
    return kOk;
  }
  std::string text = "n,count,estimate,std_error,ci99_lo,ci99_hi,analytic,z_score\n";
  for (int k = 0; k < 4; ++k) {
    text += std::to_string(k + 3) + "," + std::to_string(report.tally.counts[k]) + "," +
            csv_number(report.estimates[k]) + "," + csv_number(report.std_errors[k]) + "," +
            csv_number(report.ci99[k].lo) + "," + csv_number(report.ci99[k].hi) + "," + csv_number(exact[k]) + "," +
            csv_number(z[k]) + "\n";
  }
  emit(cfg, out, text);
  return kOk;
}

// ---------------------------------------------------------------- integrate

int cmd_integrate(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"json", "csv"});
  const Weights w = parse_weights(cfg);
  const QuadraturePmf quad = pmf_by_quadrature(w);
  const auto exact = analytic::pmf(w.p(), w.q());

  if (cfg.format == "csv") {
    std::string text = "id,label,n,subtype,probability,est_error\n";
    for (const auto& c : quad.cases) {
      text += c.spec->id + "," + c.spec->symbol + "," + std::to_string(c.spec->n) + "," + to_string(c.spec->subtype) +
              "," + csv_number(c.probability.value) + "," + csv_number(c.probability.error) + "\n";
    }
    emit(cfg, out, text);
    return kOk;
  }

  json cases = json::array();
  for (const auto& c : quad.cases) {
    json row = {{"id", c.spec->id},
                {"label", c.spec->symbol},
                {"n", c.spec->n},
                {"probability", c.probability.value},
                {"est_error", c.probability.error}};
    if (c.spec->subtype != QuadSubtype::none) row["subtype"] = to_string(c.spec->subtype);
    cases.push_back(row);
  }
  json sums = json::object(), errs = json::object(), an = json::object(), dev = json::object();
  for (int k = 0; k < 4; ++k) {
    const std::string key = std::to_string(k + 3);
    sums[key] = quad.pmf[k];
    errs[key] = quad.error[k];
    an[key] = exact[k];
    dev[key] = quad.pmf[k] - exact[k];
  }
  const json j = {{"schema_version", 1},
                  {"p", w.p()},
                  {"q", w.q()},
                  {"cases", cases},
                  {"pmf", sums},
                  {"pmf_error", errs},
                  {"analytic", an},
                  {"deviation", dev},
                  {"subtype_sums", {{"para", quad.para}, {"trap", quad.trap}}},
                  {"analytic_subtypes",
                   {{"para", analytic::para(w.p(), w.q())}, {"trap", analytic::trap(w.p(), w.q())}}}};
  emit(cfg, out, dump(j));
  return kOk;
}

// ---------------------------------------------------------------- scan

struct ScanRow {
  Rational p, q;
  std::array<double, 6> values; // p3, p4, p5, p6, para, trap
};

std::vector<ScanRow> scan_grid(const Rational& step) {
  std::vector<ScanRow> rows;
  for (Rational p = step; p < 1; p += step) {
    for (Rational q = step; p + q < 1; q += step) {
      const auto pm = analytic::pmf(p, q);
      ScanRow row{p, q, {}};
      for (int k = 0; k < 4; ++k) row.values[k] = analytic::to_double(pm[k]);
      row.values[4] = analytic::to_double(analytic::para(p, q));
      row.values[5] = analytic::to_double(analytic::trap(p, q));
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<int> parse_components(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      for (int k = 0; k < 6; ++k) out.push_back(k);
      continue;
    }
    const auto it = std::find(std::begin(kComponents), std::end(kComponents), item);
    if (it == std::end(kComponents)) throw ValidationError("unknown --component " + item);
    out.push_back(static_cast<int>(it - std::begin(kComponents)));
  }
  if (out.empty()) throw ValidationError("--component is empty");
  return out;
}

std::string suffixed(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_" + suffix;
  return path.substr(0, dot) + "_" + suffix + path.substr(dot);
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"csv", "svg"});
  Rational step;
  try {
    step = parse_rational(cfg.step);
  } catch (const std::exception&) {
    throw ValidationError("malformed --step " + cfg.step);
  }
  if (!(step > 0) || step > Rational(1, 4)) throw ValidationError("--step must lie in (0, 1/4]");
  const auto rows = scan_grid(step);

  if (cfg.format == "csv") {
    std::string text = "p,q,p3,p4,p5,p6,para,trap\n";
    for (const auto& r : rows) {
      text += csv_number(analytic::to_double(r.p)) + "," + csv_number(analytic::to_double(r.q));
      for (double v : r.values) text += "," + csv_number(v);
      text += "\n";
    }
    emit(cfg, out, text);
    return kOk;
  }

  const auto components = parse_components(cfg.component);
  if (components.size() > 1 && cfg.out.empty()) throw ValidationError("several SVG heatmaps need --out");
  for (int comp : components) {
    std::vector<svg::HeatmapPoint> pts;
    for (const auto& r : rows) pts.push_back({analytic::to_double(r.p), analytic::to_double(r.q), r.values[comp]});
    const std::string name = kComponents[comp];
    const bool minimum = name == "p4" || name == "para";
    const std::string title = name == "para" || name == "trap" ? "P(cell is " + name + ")"
                                                               : "P(N = " + name.substr(1) + ")";
    RunConfig target = cfg;
    if (components.size() > 1) target.out = suffixed(cfg.out, name);
    emit(target, out, svg::render_heatmap(pts, analytic::to_double(step), title, minimum));
  }
  return kOk;
}

// ---------------------------------------------------------------- renders

int cmd_render_tessellation(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"svg", "json", "csv"});
  const Weights w = parse_weights(cfg);
  const Window window(cfg.window_R, cfg.inner_frac);
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? cfg.seed : replicate_seed(cfg.seed, 0, attempt);
    const LineRealization lines = sample_lines(w, window, seed);
    try {
      const Arrangement arr = build(lines);
      if (cfg.format == "svg") {
        emit(cfg, out, svg::render_tessellation(arr, lines));
      } else if (cfg.format == "csv") {
        std::ostringstream os;
        write_faces_csv(os, arr);
        emit(cfg, out, os.str());
      } else {
        emit(cfg, out, dump(to_json(lines)));
      }
      return kOk;
    } catch (const DegenerateInputError&) {
      // redraw with a derived seed
    }
  }
  throw std::runtime_error("no non-degenerate realization found");
}

int cmd_sample_cell(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg, {"json", "svg"});
  if (cfg.count < 1) throw ValidationError("--count must be at least 1");
  const Weights w = parse_weights(cfg);
  const TypicalCellSampler sampler(w);
  RandomStream rng(cfg.seed);
  std::vector<CellSample> cells;
  for (int i = 0; i < cfg.count; ++i) cells.push_back(sampler.sample(rng));
  if (cfg.format == "svg") {
    emit(cfg, out, svg::render_cells(cells));
    return kOk;
  }
  json list = json::array();
  for (const auto& c : cells) {
    json verts = json::array();
    for (const Point& v : c.polygon.vertices()) verts.push_back({v.x, v.y});
    list.push_back({{"id", c.spec->id},
                    {"label", c.spec->symbol},
                    {"n", c.spec->n},
                    {"sides", c.z},
                    {"vertices", verts},
                    {"closing_residual", closing_residual(c.polygon)},
                    {"density", c.density}});
  }
  emit(cfg, out, dump({{"schema_version", 1}, {"p", w.p()}, {"q", w.q()}, {"seed", cfg.seed}, {"cells", list}}));
  return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vertex-number distribution of the typical cell in a three-direction Poisson line tessellation",
               "tripoly"};
  app.require_subcommand(1);
  RunConfig cfg;
  // Flag values for commands whose defaults differ from the shared ones.
  double render_R = 15.0;

  auto* formula = app.add_subcommand("formula", "closed-form probabilities, para/trap split, mean and variance");
  add_common(formula, cfg, "json (default) or csv");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate from clipped line arrangements");
  add_common(simulate, cfg, "json (default) or csv");
  simulate->add_option("--window-R", cfg.window_R, "window half-width R")->capture_default_str();
  simulate->add_option("--inner-frac", cfg.inner_frac, "inner box fraction")->capture_default_str();
  simulate->add_option("--replicates", cfg.replicates, "minimum number of windows")->capture_default_str();
  simulate->add_option("--min-cells", cfg.min_cells, "minimum usable cells")->capture_default_str();
  simulate->add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();
  simulate->add_flag("--timing", cfg.timing, "include wall_time_ms in the report");

  auto* integrate = app.add_subcommand("integrate", "per-case probabilities by nested quadrature");
  add_common(integrate, cfg, "json (default) or csv");

  auto* scan = app.add_subcommand("scan", "analytic probabilities over a simplex grid (CSV or SVG heatmap)");
  add_common(scan, cfg, "csv (default) or svg");
  scan->add_option("--step", cfg.step, "grid step, fraction or decimal, in (0, 1/4]")->capture_default_str();
  scan->add_option("--component", cfg.component, "p3|p4|p5|p6|para|trap|all, comma separated")
      ->capture_default_str();

  auto* render = app.add_subcommand("render-tessellation", "draw a clipped realization (SVG), or dump faces/lines");
  add_common(render, cfg, "svg (default), csv (faces) or json (lines)");
  render->add_option("--window-R", render_R, "window half-width R")->capture_default_str();
  render->add_option("--inner-frac", cfg.inner_frac, "inner box fraction")->capture_default_str();

  auto* sample = app.add_subcommand("sample-cell", "draw typical cells from the case densities");
  add_common(sample, cfg, "json (default) or svg");
  sample->add_option("--count", cfg.count, "number of cells")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back(); // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();
  if (name == "render-tessellation") cfg.window_R = render_R;

  try {
    apply_config(cfg, *active);
    if (cfg.format.empty()) {
      cfg.format = name == "scan" ? "csv" : name == "render-tessellation" ? "svg" : "json";
    }
    if (name == "formula") return cmd_formula(cfg, out);
    if (name == "simulate") return cmd_simulate(cfg, out, err);
    if (name == "integrate") return cmd_integrate(cfg, out);
    if (name == "scan") return cmd_scan(cfg, out);
    if (name == "render-tessellation") return cmd_render_tessellation(cfg, out);
    return cmd_sample_cell(cfg, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const AccuracyError& e) {
    err << "accuracy failure: " << e.what() << " (estimate " << e.estimate() << ", error " << e.error() << ")\n";
    return kAccuracy;
  } catch (const EmptySampleError& e) {
    err << "empty sample: " << e.what() << "\n";
    return kEmptySample;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

} // namespace tripoly::cli
