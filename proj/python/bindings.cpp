#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "tripoly/analytic.hpp"
#include "tripoly/estimator.hpp"
#include "tripoly/typical_cell.hpp"

namespace py = pybind11;
using namespace tripoly;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string formula_json(const std::string& p, const std::string& q) {
  std::ostringstream out, err;
  const int code = cli::run({"tripoly", "formula", "--p", p, "--q", q}, out, err);
  if (code != 0) throw ValidationError(err.str());
  return out.str();
}

nlohmann::json quadrature_json(const Weights& w) {
  const QuadraturePmf r = pmf_by_quadrature(w);
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"id", c.spec->id},
                     {"label", c.spec->symbol},
                     {"n", c.spec->n},
                     {"subtype", to_string(c.spec->subtype)},
                     {"probability", c.probability.value},
                     {"est_error", c.probability.error}});
  }
  return {{"pmf", r.pmf}, {"error", r.error}, {"para", r.para}, {"trap", r.trap}, {"cases", cases}};
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Typical-cell vertex numbers of three-direction Poisson line tessellations";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<EmptySampleError>(m, "EmptySampleError", PyExc_RuntimeError);
  py::register_exception<SamplerStallError>(m, "SamplerStallError", PyExc_RuntimeError);

  m.def("formula_json", &formula_json, py::arg("p"), py::arg("q"));

  m.def(
      "pmf",
      [](const std::string& p, const std::string& q) {
        const Weights w = Weights::parse(p, q);
        return analytic::pmf(w.p(), w.q());
      },
      py::arg("p"), py::arg("q"), "P(N = 3..6) in double precision");

  m.def(
      "lambda_of",
      [](int family, const std::string& p, const std::string& q) {
        return lambda_of(CanonicalAngle(family), Weights::parse(p, q));
      },
      py::arg("family"), py::arg("p"), py::arg("q"));
  m.def(
      "lambda_total", [](const std::string& p, const std::string& q) { return lambda_total(Weights::parse(p, q)); },
      py::arg("p"), py::arg("q"));

  m.def("case_ids", [] {
    std::vector<std::string> ids;
    for (const auto& c : all_cases()) ids.push_back(c.id);
    return ids;
  });

  m.def(
      "integrate_case",
      [](const std::string& id, const std::string& p, const std::string& q) {
        const quad::Estimate e = integrate_case(find_case(id), Weights::parse(p, q));
        return std::make_pair(e.value, e.error);
      },
      py::arg("case_id"), py::arg("p"), py::arg("q"));

  m.def(
      "quadrature_json",
      [](const std::string& p, const std::string& q) { return quadrature_json(Weights::parse(p, q)).dump(); },
      py::arg("p"), py::arg("q"));

  m.def(
      "simulate_json",
      [](const std::string& p, const std::string& q, double R, double inner_frac, int replicates,
         std::uint64_t min_cells, std::uint64_t seed, unsigned threads) {
        const Weights w = Weights::parse(p, q);
        PmfReport report;
        {
          py::gil_scoped_release release;
          report = estimate_pmf(w, Window(R, inner_frac), EstimatorOptions{replicates, min_cells, threads}, seed);
        }
        return to_json(report).dump();
      },
      py::arg("p"), py::arg("q"), py::arg("R") = 60.0, py::arg("inner_frac") = 0.25, py::arg("replicates") = 1,
      py::arg("min_cells") = 0, py::arg("seed") = cli::kDefaultSeed, py::arg("threads") = 0);

  m.def(
      "sample_cell",
      [](const std::string& p, const std::string& q, std::uint64_t seed) {
        const CellSample s = sample_typical_cell(Weights::parse(p, q), seed);
        std::vector<std::pair<double, double>> verts;
        for (const Point& v : s.polygon.vertices()) verts.emplace_back(v.x, v.y);
        py::dict d;
        d["id"] = s.spec->id;
        d["label"] = s.spec->symbol;
        d["n"] = s.spec->n;
        d["sides"] = s.z;
        d["vertices"] = verts;
        d["closing_residual"] = closing_residual(s.polygon);
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("seed") = cli::kDefaultSeed);

  m.def(
      "verify_extrema",
      [](const std::string& step) {
        const auto report = analytic::verify_extrema(parse_rational(step));
        py::list results;
        for (const auto& r : report.results) {
          py::dict d;
          d["n"] = r.component;
          d["maximize"] = r.maximize;
          d["p"] = to_string(r.p);
          d["q"] = to_string(r.q);
          d["value"] = to_string(r.value);
          d["at_expected"] = r.at_expected;
          d["strict"] = r.strict;
          results.append(d);
        }
        py::dict out;
        out["ok"] = report.ok();
        out["grid_points"] = report.grid_points;
        out["results"] = results;
        return out;
      },
      py::arg("step"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        std::vector<std::string> argv{"tripoly"};
        argv.insert(argv.end(), args.begin(), args.end());
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(argv, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = "0.1.0";
}
