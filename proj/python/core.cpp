// Python bindings: a thin layer over the C++ library.  Reports cross the
// boundary as JSON text; the package __init__ decodes them.

#include "bernpos/analysis.hpp"
#include "bernpos/bernstein.hpp"
#include "bernpos/combinatorics.hpp"
#include "bernpos/moments.hpp"
#include "bernpos/operators.hpp"
#include "bernpos/oracle.hpp"
#include "bernpos/report_json.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bernpos;

namespace {

using Params = std::map<std::string, double>;

DegreeVector degree_from(const std::vector<int>& n, int d) {
  if (n.size() == 1) return DegreeVector::uniform(static_cast<std::size_t>(d), n[0]);
  if (static_cast<int>(n.size()) != d) throw std::invalid_argument("degree list must have 1 or d entries");
  return DegreeVector(n);
}

TensorBernstein<double> approximate(const std::string& func, int d, const std::vector<int>& n, int r,
                                    const std::string& backend, const Params& params) {
  const auto f = builtin(func, d, params);
  const auto deg = degree_from(n, d);
  const bool exact = backend == "exact" || (backend == "auto" && f.has_exact());
  if (backend != "auto" && backend != "exact" && backend != "float")
    throw std::invalid_argument("backend must be auto, exact or float");
  if (exact && !f.has_exact()) throw std::invalid_argument(func + " has no exact backend");
  return exact ? to_double(lorentz_Q<Rational>(f, deg, r)) : lorentz_Q<double>(f, deg, r);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bernstein and corrected Bernstein approximation on the unit cube";

  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

  m.def("binomial", [](int n, int k) { return py::int_(py::str(binomial(n, k).str())); }, py::arg("n"), py::arg("k"));
  m.def("delta_n", &delta_n, py::arg("n"), py::arg("t"));
  m.def("Delta_n", &Delta_n, py::arg("n"), py::arg("t"));
  m.def("abs_moment_scaled", &abs_moment_scaled, py::arg("n"), py::arg("s"), py::arg("x"));
  m.def(
      "central_moment_coeffs",
      [](int n, int s) {
        const auto t = central_moments(n, s);
        std::vector<std::string> out;
        for (const auto& c : t.polys[static_cast<std::size_t>(s)]) out.push_back(c.str());
        return out;
      },
      py::arg("n"), py::arg("s"), "Monomial coefficients of T_{n,s} as exact fraction strings.");
  m.def("builtin_names", &builtin_names);

  py::class_<TensorBernstein<double>>(m, "Bernstein")
      .def_property_readonly("degree",
                             [](const TensorBernstein<double>& p) {
                               return std::vector<int>(p.degree().entries().begin(), p.degree().entries().end());
                             })
      .def_property_readonly("coeffs",
                             [](const TensorBernstein<double>& p) {
                               std::vector<py::ssize_t> shape;
                               for (int v : p.degree().entries()) shape.push_back(v + 1);
                               py::array_t<double> a(shape);
                               std::copy(p.coeffs().begin(), p.coeffs().end(), a.mutable_data());
                               return a;
                             })
      .def("__call__",
           [](const TensorBernstein<double>& p, const std::vector<double>& x) { return p.eval(x); })
      .def("integral", [](const TensorBernstein<double>& p) { return integral(p); })
      .def("min_coefficient", [](const TensorBernstein<double>& p) { return min_coefficient(p).first; })
      .def("to_text", [](const TensorBernstein<double>& p) { return to_text(p); })
      .def_static("from_text", [](const std::string& s) { return tensor_from_text(s); });

  m.def("approximate", &approximate, py::arg("func"), py::arg("d") = 1, py::arg("n") = std::vector<int>{16},
        py::arg("r") = 0, py::arg("backend") = "auto", py::arg("params") = Params{},
        py::call_guard<py::gil_scoped_release>());

  m.def(
      "_verify_json",
      [](const std::string& func, int d, int r, const std::vector<int>& degrees, std::optional<double> constant,
         std::uint64_t seed, const Params& params) {
        const auto f = builtin(func, d, params);
        VerifyOptions opt;
        opt.r = r;
        opt.kind = r <= 1 ? BoundKind::thm1_i : BoundKind::thm1_ii;
        opt.builder = r <= 1 ? Builder::bernstein : Builder::lorentz;
        for (int n : degrees) opt.degrees.push_back(DegreeVector::uniform(static_cast<std::size_t>(d), n));
        opt.points = default_verification_points(d, seed);
        opt.declared_constant = r <= 1 ? std::optional<double>(constant.value_or(1.05)) : constant;
        opt.seed = seed;
        return to_json(verify_bound(f, opt)).dump();
      },
      py::arg("func"), py::arg("d"), py::arg("r"), py::arg("degrees"), py::arg("constant"), py::arg("seed"),
      py::arg("params"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "_positivity_json",
      [](const std::string& func, int d, int r, int n_max, bool exact, const Params& params) {
        return to_json(positivity_scan(builtin(func, d, params), r, n_max, exact)).dump();
      },
      py::arg("func"), py::arg("d"), py::arg("r"), py::arg("n_max"), py::arg("exact"), py::arg("params"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "_lemma_json",
      [](int n_max, int s_max, int grid) {
        Lemma1Options opt;
        opt.n_max = n_max;
        opt.s_max = s_max;
        opt.grid_size = grid;
        return to_json(lemma1_check(opt)).dump();
      },
      py::arg("n_max"), py::arg("s_max"), py::arg("grid"), py::call_guard<py::gil_scoped_release>());
}
