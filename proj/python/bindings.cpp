#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gcmhaz/canonical.hpp"
#include <optional>
#include <utility>
#include <vector>

#include "gcmhaz/empirical.hpp"
#include "gcmhaz/gcm.hpp"
#include "gcmhaz/harness.hpp"
#include "gcmhaz/models.hpp"
#include "gcmhaz/statistics.hpp"
#include "gcmhaz/version.hpp"

namespace py = pybind11;
using namespace gcmhaz;

namespace {

std::vector<std::pair<double, double>> hull_knots(
    const std::vector<std::pair<double, double>>& points) {
  auto hull = gcm_points(points);
  std::vector<std::pair<double, double>> out;
  out.reserve(hull.num_knots());
  for (std::size_t i = 0; i < hull.num_knots(); ++i)
    out.emplace_back(hull.knot_x()[i], hull.knot_y()[i]);
  return out;
}

py::dict report_dict(const TestReport& r) {
  py::dict d;
  d["stat"] = to_string(r.kind);
  d["value"] = r.value;
  d["n"] = r.n;
  d["a"] = r.a;
  d["calibration"] = r.calibration_mode;
  if (r.mu_n) d["mu_n"] = *r.mu_n;
  if (r.scale) d["scale"] = *r.scale;
  if (r.z) d["z"] = *r.z;
  if (r.p_value) d["p_value"] = *r.p_value;
  d["diagnostics"] = r.diagnostics;
  return d;
}

}  // namespace

PYBIND11_MODULE(_gcmhaz, m) {
  m.doc() = "hazard monotonicity tests via greatest convex minorants";
  m.attr("__version__") = kVersion;

  m.def("gcm_knots", &hull_knots, py::arg("points"),
        "Knots of the greatest convex minorant of a finite point set.");

  m.def(
      "statistic",
      [](std::vector<double> data, double a, const std::string& stat, bool jitter) {
        SortedSample s(std::move(data), jitter);
        double v = stat == "U" ? statistic_U(s, a) : statistic_T(s, a);
        py::dict d;
        d["stat"] = stat == "U" ? "U" : "T";
        d["value"] = v;
        d["n"] = s.n();
        d["a"] = a;
        return d;
      },
      py::arg("data"), py::arg("a"), py::arg("stat") = "T", py::arg("jitter") = false,
      "Compute the T or U hazard-monotonicity statistic.");

  m.def(
      "test",
      [](std::vector<double> data, double a, const std::string& stat,
         const std::string& model_spec, const CanonicalConstants& constants,
         bool jitter) {
        SortedSample s(std::move(data), jitter);
        StatKind kind = stat == "U" ? StatKind::U : StatKind::T;
        double v = kind == StatKind::U ? statistic_U(s, a) : statistic_T(s, a);
        auto model = make_model(model_spec);
        return report_dict(standardize(v, kind, s.n(), model, a, constants));
      },
      py::arg("data"), py::arg("a"), py::arg("stat"), py::arg("model"),
      py::arg("constants"), py::arg("jitter") = false,
      "Standardized test with z-score and one-sided p-value under a null model.");

  m.def(
      "sample",
      [](const std::string& model_spec, std::size_t n, std::uint64_t seed) {
        return sample_from(make_model(model_spec), n, seed).obs();
      },
      py::arg("model"), py::arg("n"), py::arg("seed"),
      "Draw a sorted i.i.d. sample from a hazard model via its inverse CDF.");

  m.def("simulate_surrogate_dn",
        [](const std::string& model_spec, double n, double a, double delta_x,
           std::uint64_t seed, std::uint64_t stream) {
          return simulate_surrogate_Dn(make_model(model_spec), n, a, delta_x, seed,
                                       stream);
        },
        py::arg("model"), py::arg("n"), py::arg("a"), py::arg("delta_x") = 1e-4,
        py::arg("seed") = 0, py::arg("stream") = 0,
        "One draw of the Brownian surrogate functional D_n.");

  py::class_<CanonicalConstants>(m, "CanonicalConstants")
      .def(py::init<>())
      .def_readwrite("e_abs_c0", &CanonicalConstants::e_abs_c0)
      .def_readwrite("sigma2", &CanonicalConstants::sigma2)
      .def_readwrite("se_e_abs_c0", &CanonicalConstants::se_e_abs_c0)
      .def_readwrite("se_sigma2", &CanonicalConstants::se_sigma2)
      .def_readwrite("delta", &CanonicalConstants::delta)
      .def_readwrite("c", &CanonicalConstants::c)
      .def_readwrite("replications", &CanonicalConstants::replications)
      .def_readwrite("l_pad", &CanonicalConstants::l_pad)
      .def_readwrite("seed", &CanonicalConstants::seed)
      .def_readwrite("version", &CanonicalConstants::version);

  m.def(
      "estimate_constants",
      [](double c, std::uint64_t replications, double delta, double l_pad,
         std::uint64_t seed) {
        ConstantsBudget b;
        b.c = c;
        b.replications = replications;
        b.delta = delta;
        b.l_pad = l_pad;
        return estimate_constants(b, seed);
      },
      py::arg("c") = 200.0, py::arg("replications") = 400, py::arg("delta") = 1e-3,
      py::arg("l_pad") = 5.0, py::arg("seed") = 0,
      "Monte Carlo estimate of E|C(0)| and the long-run variance sigma2.");
}
