// pybind11 bindings for the core: initial data, direct scattering, Painleve II,
// phase geometry, transition-region predictions, direct evolution and the
// comparison/audit pipelines.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlsbg/airy.hpp"
#include "nlsbg/asymptotics.hpp"
#include "nlsbg/datum.hpp"
#include "nlsbg/evolve.hpp"
#include "nlsbg/painleve.hpp"
#include "nlsbg/phase.hpp"
#include "nlsbg/report.hpp"
#include "nlsbg/scattering.hpp"

namespace py = pybind11;
using namespace nlsbg;

PYBIND11_MODULE(_nlsbg, m) {
  m.doc() =
      "numerical laboratory for defocusing NLS with nonzero background: "
      "scattering data, Painleve II transition asymptotics, direct evolution";
  m.attr("__version__") = kVersion;

  py::enum_<CaseTag>(m, "CaseTag")
      .value("CaseI", CaseTag::CaseI)
      .value("CaseII", CaseTag::CaseII);
  py::enum_<Region>(m, "Region")
      .value("SolitonicI", Region::SolitonicI)
      .value("SolitonlessII", Region::SolitonlessII)
      .value("TransitionMinus1", Region::TransitionMinus1)
      .value("TransitionPlus1", Region::TransitionPlus1);

  py::class_<InitialDatum>(m, "InitialDatum")
      .def_readonly("x0", &InitialDatum::x0)
      .def_readonly("dx", &InitialDatum::dx)
      .def_readonly("q", &InitialDatum::q)
      .def("x_end", &InitialDatum::x_end)
      .def("at", &InitialDatum::at, py::arg("x"))
      .def("validate", &InitialDatum::validate);
  m.def("tanh_datum", &tanh_datum, py::arg("L") = 30.0, py::arg("dx") = 0.02);
  m.def("tanh_gauss_datum", &tanh_gauss_datum, py::arg("amp"),
        py::arg("width") = 1.0, py::arg("L") = 30.0, py::arg("dx") = 0.02);
  m.def("tanh_sech2_datum", &tanh_sech2_datum, py::arg("amp"),
        py::arg("L") = 30.0, py::arg("dx") = 0.02);

  m.def(
      "airy",
      [](double x) {
        AiryValue v = airy(x);
        return py::make_tuple(v.Ai, v.Ai_prime);
      },
      py::arg("x"), "(Ai(x), Ai'(x))");

  // phase geometry
  m.def("theta", &theta, py::arg("z"), py::arg("xi"));
  m.def("theta_prime", &theta_prime, py::arg("z"), py::arg("xi"));
  py::class_<PhaseGeometry>(m, "PhaseGeometry")
      .def_readonly("xi", &PhaseGeometry::xi)
      .def_readonly("region", &PhaseGeometry::region)
      .def_readonly("has_points", &PhaseGeometry::has_points)
      .def_readonly("xi1", &PhaseGeometry::xi1)
      .def_readonly("xi2", &PhaseGeometry::xi2);
  m.def("stationary_points", &stationary_points, py::arg("xi"));
  m.def("classify_region", &classify_region, py::arg("x"), py::arg("t"),
        py::arg("C"));
  m.def("phase_remainder", &phase_remainder, py::arg("z"), py::arg("x"),
        py::arg("t"), py::arg("case_tag"));

  // Painleve II
  py::class_<PainleveTable>(m, "PainleveTable")
      .def_readonly("kappa", &PainleveTable::kappa)
      .def_readonly("s_min", &PainleveTable::s_min)
      .def_readonly("s_max", &PainleveTable::s_max)
      .def("u_at", &PainleveTable::u_at, py::arg("s"))
      .def("u_prime_at", &PainleveTable::u_prime_at, py::arg("s"))
      .def("tail", [](const PainleveTable& t, double s) {
        return tail_integral(t, s);
      });
  m.def("solve_pii", &solve_pii, py::arg("kappa"), py::arg("s_min"),
        py::arg("s_max") = 10.0, py::arg("rel_tol") = 1e-11,
        py::arg("abs_tol") = 1e-13);

  // direct scattering
  py::class_<DiscreteMode>(m, "DiscreteMode")
      .def_readonly("z", &DiscreteMode::z)
      .def_readonly("c", &DiscreteMode::c)
      .def_readonly("s11_prime", &DiscreteMode::s11_prime);
  py::class_<ScatteringSolver>(m, "ScatteringSolver")
      .def(py::init<InitialDatum, double>(), py::arg("datum"),
           py::arg("exclusion_radius") = 0.02)
      .def("coefficients", &ScatteringSolver::coefficients, py::arg("z"))
      .def("reflection", &ScatteringSolver::reflection, py::arg("z"))
      .def("nu", &ScatteringSolver::nu, py::arg("zeta"))
      .def("one_minus_r2", &ScatteringSolver::one_minus_r2, py::arg("zeta"))
      .def("s11_upper", &ScatteringSolver::s11_upper, py::arg("z"))
      .def("trace_formula_s11", &ScatteringSolver::trace_formula_s11,
           py::arg("z"))
      .def("discrete_spectrum", &ScatteringSolver::discrete_spectrum,
           py::return_value_policy::copy)
      .def("T_infinity", &ScatteringSolver::T_infinity, py::arg("case_tag"))
      .def("modified_reflection_R", &ScatteringSolver::modified_reflection_R,
           py::arg("z"));

  // transition-region asymptotics
  py::class_<AsymptoticPrediction>(m, "AsymptoticPrediction")
      .def_readonly("case_tag", &AsymptoticPrediction::case_tag)
      .def_readonly("x", &AsymptoticPrediction::x)
      .def_readonly("t", &AsymptoticPrediction::t)
      .def_readonly("xi", &AsymptoticPrediction::xi)
      .def_readonly("s", &AsymptoticPrediction::s)
      .def_readonly("tau", &AsymptoticPrediction::tau)
      .def_readonly("alpha_inf", &AsymptoticPrediction::alpha_inf)
      .def_readonly("phi0", &AsymptoticPrediction::phi0)
      .def_readonly("kappa", &AsymptoticPrediction::kappa)
      .def_readonly("u", &AsymptoticPrediction::u)
      .def_readonly("tail", &AsymptoticPrediction::tail)
      .def_readonly("beta", &AsymptoticPrediction::beta)
      .def_readonly("q_pred", &AsymptoticPrediction::q_pred)
      .def_readonly("t_inf_sq", &AsymptoticPrediction::t_inf_sq);
  m.def("alpha_infty", &alpha_infty, py::arg("scattering"), py::arg("case_tag"));
  m.def("phi0_phase", &phi0_phase, py::arg("scattering"), py::arg("case_tag"));
  m.def("edge_kappa", &edge_kappa, py::arg("scattering"), py::arg("case_tag"));
  m.def(
      "q_asymptotic",
      [](double x, double t, const ScatteringSolver& s, double C) {
        return q_asymptotic(x, t, s, C);
      },
      py::arg("x"), py::arg("t"), py::arg("scattering"), py::arg("C"));

  // direct evolution
  py::class_<EvolveParams>(m, "EvolveParams")
      .def(py::init<>())
      .def_readwrite("L", &EvolveParams::L)
      .def_readwrite("N", &EvolveParams::N)
      .def_readwrite("dt", &EvolveParams::dt)
      .def_readwrite("leakage_threshold", &EvolveParams::leakage_threshold)
      .def_readwrite("record_interval", &EvolveParams::record_interval);
  py::class_<DiagnosticsRow>(m, "DiagnosticsRow")
      .def_readonly("t", &DiagnosticsRow::t)
      .def_readonly("mass", &DiagnosticsRow::mass)
      .def_readonly("energy", &DiagnosticsRow::energy)
      .def_readonly("leakage", &DiagnosticsRow::leakage);
  py::class_<EvolutionState>(m, "EvolutionState")
      .def_readonly("L", &EvolutionState::L)
      .def_readonly("N", &EvolutionState::N)
      .def_readonly("t", &EvolutionState::t)
      .def_readonly("w", &EvolutionState::w)
      .def_readonly("diagnostics", &EvolutionState::diagnostics)
      .def("dx", &EvolutionState::dx)
      .def("x_at", &EvolutionState::x_at, py::arg("j"));
  m.def("evolve", &evolve, py::arg("datum"), py::arg("t_end"),
        py::arg("params") = EvolveParams{},
        py::call_guard<py::gil_scoped_release>());
  m.def("sample_field", &sample_field, py::arg("state"), py::arg("x"));
  m.def("conserved_quantities", &conserved_quantities, py::arg("state"));

  // harness pipelines (JSON in / JSON out)
  m.def(
      "run_compare_json",
      [](const std::string& config_json) {
        ComparisonReport rep = run_compare(run_config_from_json(config_json));
        return to_json(rep);
      },
      py::arg("config_json"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_signature_json",
      [](const std::string& config_json) {
        SignatureReport rep = run_signature(run_config_from_json(config_json));
        return to_json(rep);
      },
      py::arg("config_json"));
  m.def(
      "config_hash_json",
      [](const std::string& config_json) {
        return config_hash(run_config_from_json(config_json));
      },
      py::arg("config_json"));
}
