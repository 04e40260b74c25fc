#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tncopt/bz.h"
#include "tncopt/epochgd.h"
#include "tncopt/functions.h"
#include "tncopt/harness/config.h"
#include "tncopt/harness/lemmas.h"
#include "tncopt/harness/rate_fit.h"
#include "tncopt/harness/sweep.h"
#include "tncopt/lowerbound.h"

namespace py = pybind11;
using namespace tncopt;

namespace {

Scaling scaling_from(const std::string& s) {
  if (s == "nominal") return Scaling::kNominal;
  if (s == "unit") return Scaling::kUnitLipschitz;
  throw py::value_error("scaling must be 'nominal' or 'unit'");
}

py::dict row_dict(const harness::SweepRow& r) {
  py::dict d;
  d["kappa"] = r.kappa;
  d["d"] = r.d;
  d["sigma"] = r.sigma;
  d["T"] = r.T;
  d["trial"] = r.trial;
  d["f_error"] = r.f_error;
  d["point_error"] = r.point_error;
  d["queries_used"] = r.queries_used;
  d["seed"] = r.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(tncopt, m) {
  m.doc() = "Stochastic convex optimization under growth conditions";

  py::register_exception<harness::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<KappaFunction>(m, "KappaFunction")
      .def_property_readonly("id", &KappaFunction::id)
      .def_property_readonly("kappa", &KappaFunction::kappa)
      .def_property_readonly("dim", &KappaFunction::dim)
      .def_property_readonly("c_kappa", &KappaFunction::c_kappa)
      .def_property_readonly("lambda_growth", &KappaFunction::lambda_growth)
      .def_property_readonly("lipschitz", &KappaFunction::lipschitz)
      .def_property_readonly("x_star", &KappaFunction::x_star)
      .def_property_readonly("f_star", &KappaFunction::f_star)
      .def("value", &KappaFunction::value, py::arg("x"))
      .def("subgradient", &KappaFunction::subgradient, py::arg("x"));

  m.def("make_f0",
        [](double kappa, int d, const std::string& scaling) { return make_f0(kappa, d, scaling_from(scaling)); },
        py::arg("kappa"), py::arg("d"), py::arg("scaling") = "nominal");
  m.def("make_f1",
        [](double kappa, int d, double a, const std::string& scaling) {
          return make_f1(kappa, d, a, scaling_from(scaling));
        },
        py::arg("kappa"), py::arg("d"), py::arg("a"), py::arg("scaling") = "nominal");
  m.def("make_hybrid", &make_hybrid);

  py::class_<EpochSchedule>(m, "EpochSchedule")
      .def_readonly("c0", &EpochSchedule::c0)
      .def_readonly("c1", &EpochSchedule::c1)
      .def_readonly("c2", &EpochSchedule::c2)
      .def_readonly("epochs", &EpochSchedule::epochs)
      .def_readonly("lengths", &EpochSchedule::lengths)
      .def_readonly("steps", &EpochSchedule::steps)
      .def_readonly("radii", &EpochSchedule::radii)
      .def("total_queries", &EpochSchedule::total_queries)
      .def("function_error_bound", &EpochSchedule::function_error_bound);
  m.def("compute_constants", &compute_constants, py::arg("kappa"), py::arg("lam"), py::arg("G"),
        py::arg("delta"), py::arg("T"));

  m.def("grid_size", [](double kappa, double lam, std::int64_t t) { return grid_size(kappa, lam, t); },
        py::arg("kappa"), py::arg("lam"), py::arg("T"));
  m.def("bz_power",
        [](double x_star, double kappa, double sigma, std::int64_t t, std::uint64_t seed) {
          PowerGradientSigns signs(x_star, 1.0, kappa, sigma, seed);
          const BzResult r = bz_run(std::ref(signs), kappa, label_margin(kappa, sigma), t);
          return py::make_tuple(r.lower, r.upper, r.x_hat);
        },
        py::arg("x_star"), py::arg("kappa"), py::arg("sigma"), py::arg("T"), py::arg("seed") = 0,
        "Noisy bisection on |x - x*|^kappa; returns (lower, upper, x_hat).");

  m.def("kl_first_order",
        py::overload_cast<double, int, double, double, std::int64_t>(&kl_first_order),
        py::arg("kappa"), py::arg("d"), py::arg("a"), py::arg("sigma"), py::arg("T"));
  m.def("kl_zeroth_order",
        py::overload_cast<double, int, double, double, std::int64_t>(&kl_zeroth_order),
        py::arg("kappa"), py::arg("d"), py::arg("a"), py::arg("sigma"), py::arg("T"));
  m.def("fano_bound", &fano_bound, py::arg("gamma"));
  m.def("gaussian_mass_bounds",
        [](double sigma, double t) {
          const MassBounds b = gaussian_mass_bounds(sigma, t);
          return py::make_tuple(b.lower, b.upper);
        },
        py::arg("sigma"), py::arg("t"));

  m.def("fit_rate",
        [](const std::vector<std::int64_t>& budgets, const std::vector<double>& errors) {
          const harness::RateFit f = harness::fit_rate(budgets, errors);
          py::dict d;
          d["slope"] = f.slope;
          d["intercept"] = f.intercept;
          d["residual_rms"] = f.residual_rms;
          d["r_squared"] = f.r_squared;
          return d;
        },
        py::arg("budgets"), py::arg("errors"));

  m.def("sweep",
        [](const std::map<std::string, std::string>& settings) {
          harness::ExperimentConfig cfg;
          for (const auto& [k, v] : settings) harness::apply_setting(cfg, k, v);
          std::vector<harness::SweepRow> rows;
          {
            py::gil_scoped_release release;
            rows = harness::sweep(cfg);
          }
          py::list out;
          for (const auto& r : rows) out.append(row_dict(r));
          return out;
        },
        py::arg("settings"), "Runs a budget sweep; settings use config-file keys and string values.");

  m.def("verify_lemmas",
        [](std::uint64_t seed, std::int64_t samples, std::int64_t projection_samples) {
          harness::LemmaOptions o;
          o.seed = seed;
          o.samples = samples;
          o.projection_samples = projection_samples;
          return harness::to_json(harness::verify_lemmas(o));
        },
        py::arg("seed") = 0, py::arg("samples") = 100000, py::arg("projection_samples") = 10000,
        "Runs the property suites and returns the JSON report.");
}
