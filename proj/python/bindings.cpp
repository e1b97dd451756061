#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "twoband/bounds_duality.h"
#include "twoband/complexity.h"
#include "twoband/errors.h"
#include "twoband/fidelity.h"
#include "twoband/nonhermitian.h"
#include "twoband/special_functions.h"
#include "twoband/sweep.h"
#include "twoband/topology.h"
#include "twoband/verify.h"

namespace py = pybind11;
using namespace twoband;

namespace {

using Values = std::map<std::string, double>;

TwoBandModel model_from(const std::string& kind, const Values& values, const std::string& parameter) {
  const ModelKind k = parse_model_kind(kind);
  return build_model(k, values, parameter.empty() ? default_parameter(k) : parameter);
}

BZQuadratureConfig quadrature(double abs_tol, double rel_tol) {
  BZQuadratureConfig cfg;
  cfg.abs_tol = abs_tol;
  cfg.rel_tol = rel_tol;
  cfg.validate();
  return cfg;
}

py::dict record_dict(const SweepRecord& r) {
  py::dict d;
  d["lambda"] = r.lambda;
  d["values"] = r.values;
  d["flags"] = std::vector<std::string>(r.flags.begin(), r.flags.end());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Krylov spread complexity, fidelity susceptibility and topology of two-band models.";

  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<DomainError>(m, "DomainError", numerical);
  py::register_exception<GapClosedError>(m, "GapClosedError", numerical);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", numerical);
  py::register_exception<NonQuantizedError>(m, "NonQuantizedError", numerical);
  py::register_exception<ExceptionalPointError>(m, "ExceptionalPointError", numerical);
  py::register_exception<NormalizationError>(m, "NormalizationError", numerical);
  py::register_exception<UndefinedRatioError>(m, "UndefinedRatioError", numerical);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", numerical);
  auto spec = py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
  py::register_exception<PartitionError>(m, "PartitionError", spec);

  // Elliptic integrals, parameter convention m = k^2.
  m.def("complete_K", [](double x) { return complete_K(EllipticModulus(x)); }, py::arg("m"));
  m.def("complete_E", [](double x) { return complete_E(EllipticModulus(x)); }, py::arg("m"));
  m.def("incomplete_E", [](double phi, double x) { return incomplete_E(phi, EllipticModulus(x)); },
        py::arg("phi"), py::arg("m"));

  m.def("ssh_complexity_closed",
        [](double t1, double t2, double theta, double phi) {
          return ssh_complexity_closed({t1, t2}, GlobalReference(theta, phi));
        },
        py::arg("t1"), py::arg("t2"), py::arg("theta"), py::arg("phi") = 0.0);
  m.def("md_complexity_closed", [](double t, double mu, double theta) { return md_complexity_closed({t, mu}, theta); },
        py::arg("t"), py::arg("mu"), py::arg("theta"));
  m.def("md_dC_dmu", [](double t, double mu, double theta) { return md_dC_dmu_analytic({t, mu}, theta); },
        py::arg("t"), py::arg("mu"), py::arg("theta"));
  m.def("plateau_complexity", [](double t1, double t2) { return plateau_complexity({t1, t2}); }, py::arg("t1"),
        py::arg("t2"));
  m.def("excited_piecewise_complexity",
        [](double t1, double t2, double k0, int sign_left, int sign_right, double theta, double phi) {
          return excited_piecewise_complexity({t1, t2}, BandAssignment::split(k0, sign_left, sign_right),
                                              GlobalReference(theta, phi));
        },
        py::arg("t1"), py::arg("t2"), py::arg("k0"), py::arg("sign_left"), py::arg("sign_right"),
        py::arg("theta"), py::arg("phi") = 0.0);

  m.def("ground_complexity",
        [](const std::string& model, const Values& values, double theta, double phi, double abs_tol,
           double rel_tol) {
          return ground_complexity(model_from(model, values, ""), GlobalReference(theta, phi),
                                   quadrature(abs_tol, rel_tol));
        },
        py::arg("model"), py::arg("values") = Values{}, py::arg("theta") = 0.0, py::arg("phi") = 0.0,
        py::arg("abs_tol") = 1e-10, py::arg("rel_tol") = 1e-10);

  m.def("chi_f",
        [](const std::string& model, const Values& values, const std::string& parameter) {
          const TwoBandModel mdl = model_from(model, values, parameter);
          const SusceptibilityBreakdown b = chi_F(mdl, mdl.lambda());
          py::dict d;
          d["total"] = b.total;
          d["components"] = b.components;
          d["diverged"] = b.diverged;
          return d;
        },
        py::arg("model"), py::arg("values") = Values{}, py::arg("parameter") = "");
  m.def("chi_f_ssh_closed", [](double t1, double t2) { return chi_F_ssh_total_closed({t1, t2}); }, py::arg("t1"),
        py::arg("t2"));
  m.def("chi_f_md_closed", [](double t, double mu) { return chi_F_md_closed({t, mu}); }, py::arg("t"),
        py::arg("mu"));

  m.def("winding",
        [](const std::string& model, const Values& values, int grid) {
          return winding_log_derivative(off_diagonal(model_from(model, values, "")), grid);
        },
        py::arg("model"), py::arg("values") = Values{}, py::arg("grid") = 1024);
  m.def("winding_cross_product",
        [](const std::string& model, const Values& values, int grid) {
          return winding_cross_product(model_from(model, values, ""), grid);
        },
        py::arg("model"), py::arg("values") = Values{}, py::arg("grid") = 8192);
  m.def("dual_windings", [](double t, double r) { return dual_windings({t, r}); }, py::arg("t"), py::arg("r"));

  m.def("bound_check",
        [](const std::string& model, const Values& values, double theta, double phi, const std::string& parameter) {
          const TwoBandModel mdl = model_from(model, values, parameter);
          const BoundReport r = bound_check(mdl, GlobalReference(theta, phi), mdl.lambda());
          py::dict d;
          d["lambda"] = r.lambda;
          d["lhs"] = r.lhs;
          d["lhs_fd"] = r.lhs_fd;
          d["rhs"] = r.rhs;
          d["ratio"] = r.ratio;
          d["diverged"] = r.diverged;
          d["satisfied"] = r.satisfied;
          return d;
        },
        py::arg("model"), py::arg("values") = Values{}, py::arg("theta") = 0.0, py::arg("phi") = 0.0,
        py::arg("parameter") = "");
  m.def("ratio_R",
        [](const std::string& model, const Values& values, double theta, double phi, const std::string& parameter) {
          const TwoBandModel mdl = model_from(model, values, parameter);
          return ratio_R(mdl, GlobalReference(theta, phi), mdl.lambda());
        },
        py::arg("model"), py::arg("values") = Values{}, py::arg("theta") = 0.0, py::arg("phi") = 0.0,
        py::arg("parameter") = "");

  m.def("fs_duality_residual", [](double t, double r) { return fs_duality_check({t, r}).residual; }, py::arg("t"),
        py::arg("r"));
  m.def("complexity_duality_residual",
        [](double t, double r, double theta, double phi) {
          return complexity_duality_check({t, r}, GlobalReference(theta, phi)).residual;
        },
        py::arg("t"), py::arg("r"), py::arg("theta"), py::arg("phi") = 0.0);
  m.def("duality_H", [](double r, double theta, double phi) { return duality_H(r, GlobalReference(theta, phi)); },
        py::arg("r"), py::arg("theta"), py::arg("phi") = 0.0);

  m.def("nh_complexity_per_mode",
        [](double t1, double t2, double gamma, double k, std::complex<double> alpha, std::complex<double> beta) {
          return nh_complexity_per_mode({t1, t2, gamma}, k, alpha, beta);
        },
        py::arg("t1"), py::arg("t2"), py::arg("gamma"), py::arg("k"), py::arg("alpha"), py::arg("beta"));
  m.def("nh_ground_complexity",
        [](double t1, double t2, double gamma, std::complex<double> alpha, std::complex<double> beta) {
          return nh_ground_complexity({t1, t2, gamma}, alpha, beta);
        },
        py::arg("t1"), py::arg("t2"), py::arg("gamma"), py::arg("alpha"), py::arg("beta"));

  m.def("sweep",
        [](const std::string& model, const std::string& sweep, const Values& fixed,
           const std::vector<std::string>& quantities, double theta, double phi, int jobs) {
          SweepSpec s;
          s.model = parse_model_kind(model);
          s.sweep = SweepRange::parse(sweep);
          s.fixed = fixed;
          s.quantities = quantities;
          s.theta = theta;
          s.phi = phi;
          s.jobs = jobs;
          py::list out;
          std::vector<SweepRecord> rows;
          {
            py::gil_scoped_release release;
            rows = run_sweep(s);
          }
          for (const auto& r : rows) out.append(record_dict(r));
          return out;
        },
        py::arg("model"), py::arg("sweep"), py::arg("fixed") = Values{},
        py::arg("quantities") = std::vector<std::string>{"complexity"}, py::arg("theta") = 0.0,
        py::arg("phi") = 0.0, py::arg("jobs") = 1);

  m.def("detect_cusps",
        [](const std::vector<double>& lambdas, const std::vector<double>& values) {
          if (lambdas.size() != values.size()) throw SpecError("lambdas and values differ in length");
          std::vector<SweepRecord> rows;
          for (std::size_t i = 0; i < lambdas.size(); ++i) rows.push_back({lambdas[i], {{"complexity", values[i]}}, {}});
          return detect_cusps(rows);
        },
        py::arg("lambdas"), py::arg("values"));

  m.def("verify",
        [](const std::string& suite) {
          py::list out;
          for (const auto& rep : run_verify(suite)) {
            for (const auto& c : rep.checks) {
              py::dict d;
              d["suite"] = rep.suite;
              d["name"] = c.name;
              d["measured"] = c.measured;
              d["tolerance"] = c.tolerance;
              d["passed"] = c.passed;
              d["note"] = c.note;
              out.append(d);
            }
          }
          return out;
        },
        py::arg("suite") = "all");
}
