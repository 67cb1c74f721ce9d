#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "holointerp/analytic.hpp"
#include "holointerp/interpolate.hpp"
#include "holointerp/runner.hpp"
#include "holointerp/spaces.hpp"
#include "holointerp/strip.hpp"
#include "holointerp/testmaps.hpp"

namespace py = pybind11;
using namespace holointerp;

namespace {

py::dict report_summary(const VerificationReport& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["pass"] = r.pass;
  d["advisory"] = r.advisory();
  d["worst_ratio"] = r.worst_ratio;
  d["min_ratio"] = r.min_ratio;
  d["tolerance"] = r.tolerance;
  d["provenance"] = to_string(r.provenance);
  d["rows"] = r.rows.size();
  return d;
}

// Python evaluators run under the GIL; the map serializes calls itself.
AnalyticMap python_map(py::function fn, std::size_t in_dim, std::size_t out_dim,
                       double radius, double c0, double c1,
                       std::optional<int> homogeneous_degree, bool maps_zero_to_zero,
                       std::string name) {
  AnalyticMap::Options opts;
  opts.radius = radius;
  opts.c0 = c0;
  opts.c1 = c1;
  opts.homogeneous_degree = homogeneous_degree;
  opts.maps_zero_to_zero = maps_zero_to_zero;
  opts.reentrant = false;
  opts.name = std::move(name);
  auto holder = std::make_shared<py::function>(std::move(fn));
  return AnalyticMap(
      [holder](CSpan x) {
        py::gil_scoped_acquire gil;
        return (*holder)(CVector(x.begin(), x.end())).cast<CVector>();
      },
      in_dim, out_dim, std::move(opts));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Interpolation bounds for analytic maps on weighted sequence couples";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<WeightedCouple>(m, "WeightedCouple")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("w0"), py::arg("w1"))
      .def_property_readonly("dim", &WeightedCouple::dim)
      .def_property_readonly("w0", &WeightedCouple::w0)
      .def_property_readonly("w1", &WeightedCouple::w1)
      .def_property_readonly("embed_const", &WeightedCouple::embed_const)
      .def("norm0", [](const WeightedCouple& c, const CVector& x) { return c.norm0(x); })
      .def("norm1", [](const WeightedCouple& c, const CVector& x) { return c.norm1(x); })
      .def("__eq__", [](const WeightedCouple& a, const WeightedCouple& b) { return a == b; })
      .def("__repr__", [](const WeightedCouple& c) {
        return "<WeightedCouple dim=" + std::to_string(c.dim()) + ">";
      });

  m.def("theta_norm",
        [](const WeightedCouple& c, double theta, const CVector& x) {
          return theta_norm(c, theta, x);
        },
        py::arg("couple"), py::arg("theta"), py::arg("x"));
  m.def("normalize_couple",
        [](const WeightedCouple& c) {
          auto n = normalize_couple(c);
          return py::make_tuple(n.couple, n.factor);
        },
        "Returns (couple with embedding constant one, factor applied to w1).");
  m.def("constant_weights", &constant_weights, py::arg("dim"), py::arg("value") = 1.0);
  m.def("geometric_weights", &geometric_weights, py::arg("dim"), py::arg("base"),
        py::arg("ratio"));
  m.def("sobolev_weights", &sobolev_weights, py::arg("dim"), py::arg("s"));

  py::class_<StripFunction>(m, "StripFunction")
      .def("__call__", &StripFunction::operator(), py::arg("z"))
      .def_property_readonly("anchor_theta", &StripFunction::anchor_theta)
      .def_property_readonly("target", &StripFunction::target)
      .def_property_readonly("ratios", &StripFunction::ratios)
      .def_property_readonly("reg_delta", &StripFunction::reg_delta);
  m.def("optimal_strip_function",
        [](const WeightedCouple& c, double theta, const CVector& x, double delta) {
          return optimal_strip_function(c, theta, x, delta);
        },
        py::arg("couple"), py::arg("theta"), py::arg("x"), py::arg("reg_delta") = 0.0);
  m.def("f_space_norm",
        [](const StripFunction& f, const WeightedCouple& c, int t_samples) {
          return f_space_norm(f, c, t_samples);
        },
        py::arg("f"), py::arg("couple"), py::arg("t_samples") = kDefaultTSamples);

  py::class_<AnalyticMap>(m, "AnalyticMap")
      .def(py::init(&python_map), py::arg("fn"), py::arg("in_dim"), py::arg("out_dim"),
           py::arg("radius") = 1.0, py::arg("c0") = 0.0, py::arg("c1") = 0.0,
           py::arg("homogeneous_degree") = std::nullopt, py::arg("maps_zero_to_zero") = true,
           py::arg("name") = "python")
      .def("__call__", [](const AnalyticMap& f, const CVector& x) { return f(x); })
      .def_property_readonly("radius", &AnalyticMap::radius)
      .def_property_readonly("c0", &AnalyticMap::c0)
      .def_property_readonly("c1", &AnalyticMap::c1)
      .def_property_readonly("name", &AnalyticMap::name);

  py::class_<Extraction>(m, "Extraction")
      .def_readonly("degree", &Extraction::degree)
      .def_readonly("value", &Extraction::value)
      .def_readonly("contour_radius", &Extraction::contour_radius)
      .def_readonly("nodes", &Extraction::nodes)
      .def_readonly("alias_bound", &Extraction::alias_bound)
      .def_readonly("alias_bound_h1", &Extraction::alias_bound_h1);
  m.def("extract_component",
        [](const AnalyticMap& f, const WeightedCouple& e, const CVector& h, int n,
           std::optional<double> rho, std::optional<int> nodes) {
          return extract_component(f, e, h, n,
                                   rho.value_or(default_contour_radius(f, e, h)),
                                   nodes.value_or(default_node_count(n)));
        },
        py::arg("map"), py::arg("e_couple"), py::arg("h"), py::arg("n"),
        py::arg("rho") = std::nullopt, py::arg("nodes") = std::nullopt);
  m.def("truncated_series",
        [](const AnalyticMap& f, const WeightedCouple& e, const CVector& h, int cap) {
          const auto r = truncated_series(f, e, h, cap);
          return py::make_tuple(r.value, r.tail_bound, r.alias_bound);
        },
        py::arg("map"), py::arg("e_couple"), py::arg("h"), py::arg("degree_cap"),
        "Returns (partial sum, tail bound, alias bound).");

  py::class_<OracleMap>(m, "OracleMap")
      .def_static("diagonal_linear", &OracleMap::diagonal_linear, py::arg("entries"))
      .def_static("diagonal_monomial", &OracleMap::diagonal_monomial, py::arg("power"),
                  py::arg("coeffs"))
      .def_static("rank_one_quadratic", &OracleMap::rank_one_quadratic, py::arg("a"),
                  py::arg("b"))
      .def_static("componentwise_geometric", &OracleMap::componentwise_geometric,
                  py::arg("scales"))
      .def_static("cauchy_convolution_truncated", &OracleMap::cauchy_convolution_truncated,
                  py::arg("dim"))
      .def_property_readonly("kind", [](const OracleMap& o) { return to_string(o.kind()); })
      .def_property_readonly("homogeneous_degree", &OracleMap::homogeneous_degree)
      .def_property_readonly("has_oracle", &OracleMap::has_oracle)
      .def("__call__", [](const OracleMap& o, const CVector& x) { return o(x); })
      .def("oracle_constants",
           [](const OracleMap& o, const WeightedCouple& e, const WeightedCouple& h, double r)
               -> std::optional<std::pair<double, double>> {
             if (auto c = o.oracle_constants(e, h, r)) return std::make_pair(c->c0, c->c1);
             return std::nullopt;
           },
           py::arg("e_couple"), py::arg("h_couple"), py::arg("radius"))
      .def("homogeneous_constants",
           [](const OracleMap& o, const WeightedCouple& e, const WeightedCouple& h)
               -> std::optional<std::pair<double, double>> {
             if (auto c = o.homogeneous_constants(e, h)) return std::make_pair(c->c0, c->c1);
             return std::nullopt;
           },
           py::arg("e_couple"), py::arg("h_couple"))
      .def("known_component",
           [](const OracleMap& o, const CVector& h, int n) { return o.known_component(h, n); },
           py::arg("h"), py::arg("n"))
      .def("to_analytic_map",
           [](const OracleMap& o, const WeightedCouple& e, const WeightedCouple& h, double r) {
             return o.to_analytic_map(e, h, r);
           },
           py::arg("e_couple"), py::arg("h_couple"), py::arg("radius"));

  m.def("lemma_bound",
        [](double c0, double c1, double theta, int degree) {
          return lemma_bound({c0, c1, 1.0, std::nullopt, theta, degree});
        },
        py::arg("m0"), py::arg("m1"), py::arg("theta"), py::arg("degree"));
  m.def("theorem1_bound",
        [](double c0, double c1, double radius, double inner_radius, double theta) {
          return theorem1_bound({c0, c1, radius, inner_radius, theta});
        },
        py::arg("c0"), py::arg("c1"), py::arg("radius"), py::arg("inner_radius"),
        py::arg("theta"));
  m.def("default_theta_grid", &default_theta_grid);

  m.def("verify_lemma",
        [](const AnalyticMap& f, const WeightedCouple& e, const WeightedCouple& h, double m0,
           double m1, std::optional<std::vector<double>> grid, std::size_t samples,
           std::uint64_t seed, int workers) {
          const auto g = grid.value_or(default_theta_grid());
          const Sampler s({samples, seed, true, true});
          py::gil_scoped_release release;
          return verify_lemma(f, e, h, m0, m1, g, s, {kExactTolerance, Provenance::oracle, workers});
        },
        py::arg("map"), py::arg("e_couple"), py::arg("h_couple"), py::arg("m0"), py::arg("m1"),
        py::arg("theta_grid") = std::nullopt, py::arg("samples") = 10000, py::arg("seed") = 0,
        py::arg("workers") = 1);
  m.def("verify_theorem1",
        [](const AnalyticMap& f, const WeightedCouple& e, const WeightedCouple& h, double c0,
           double c1, double inner_radius, std::optional<std::vector<double>> grid,
           std::size_t samples, std::uint64_t seed, int workers) {
          const auto g = grid.value_or(default_theta_grid());
          const Sampler s({samples, seed, true, true});
          py::gil_scoped_release release;
          return verify_theorem1(f, e, h, {c0, c1, f.radius(), inner_radius}, g, s,
                                 {kExactTolerance, Provenance::oracle, workers});
        },
        py::arg("map"), py::arg("e_couple"), py::arg("h_couple"), py::arg("c0"), py::arg("c1"),
        py::arg("inner_radius"), py::arg("theta_grid") = std::nullopt,
        py::arg("samples") = 10000, py::arg("seed") = 0, py::arg("workers") = 1);

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("suite", &VerificationReport::suite)
      .def_readonly("pass_", &VerificationReport::pass)
      .def_readonly("worst_ratio", &VerificationReport::worst_ratio)
      .def_readonly("min_ratio", &VerificationReport::min_ratio)
      .def_readonly("tolerance", &VerificationReport::tolerance)
      .def_property_readonly("advisory", &VerificationReport::advisory)
      .def_property_readonly("ratios",
                             [](const VerificationReport& r) {
                               std::vector<std::tuple<double, std::int64_t, double>> out;
                               out.reserve(r.rows.size());
                               for (const auto& row : r.rows) {
                                 out.emplace_back(row.theta, row.sample_id, row.ratio);
                               }
                               return out;
                             })
      .def("summary", &report_summary);

  m.def("run_config",
        [](const std::string& config_json, std::optional<std::uint64_t> seed, int workers) {
          ConfigOverrides o;
          o.seed = seed;
          const RunConfig cfg = parse_config(nlohmann::json::parse(config_json), o);
          RunResult result;
          {
            py::gil_scoped_release release;
            result = run(cfg, workers);
          }
          return report_json(cfg, result).dump();
        },
        py::arg("config_json"), py::arg("seed") = std::nullopt, py::arg("workers") = 1,
        "Runs a JSON configuration and returns the report document as a JSON string.");
}
