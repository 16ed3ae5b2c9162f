#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dho/cli.hpp"
#include "dho/entropy.hpp"
#include "dho/errors.hpp"
#include "dho/model.hpp"
#include "dho/phasespace.hpp"
#include "dho/propagator.hpp"
#include "dho/purity.hpp"
#include "dho/state.hpp"

namespace py = pybind11;
using namespace dho;

namespace {

py::dict scalars_dict(const DerivedScalars& d) {
  py::dict out;
  out["sigma"] = d.sigma_det;
  out["nu"] = d.nu;
  out["S"] = d.s_vn;
  out["T_e"] = d.t_eff ? py::cast(*d.t_eff) : py::none();
  out["gamma"] = d.gamma;
  out["S_l"] = d.s_lin;
  out["S_l_rate"] = d.s_lin_rate;
  out["I"] = d.wehrl;
  out["E"] = d.energy;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian-state Lindblad dynamics of the damped harmonic oscillator";

  auto base = py::register_exception<ValidationError>(m, "ValidationError",
                                                      PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError",
                                           PyExc_RuntimeError);
  (void)base;

  py::class_<UnitSystem>(m, "UnitSystem")
      .def(py::init([](double hbar, double k) { return UnitSystem{hbar, k}; }),
           py::arg("hbar") = 1.0, py::arg("boltzmann") = 1.0)
      .def_readwrite("hbar", &UnitSystem::hbar)
      .def_readwrite("boltzmann", &UnitSystem::boltzmann);

  py::class_<OscillatorSpec>(m, "OscillatorSpec")
      .def(py::init<double, double, double, double, UnitSystem>(),
           py::arg("mass") = 1.0, py::arg("omega") = 1.0, py::arg("lam") = 0.0,
           py::arg("mu") = 0.0, py::arg("units") = UnitSystem{})
      .def_property_readonly("mass", &OscillatorSpec::mass)
      .def_property_readonly("omega", &OscillatorSpec::omega)
      .def_property_readonly("lam", &OscillatorSpec::lambda)
      .def_property_readonly("mu", &OscillatorSpec::mu)
      .def_property_readonly("hbar", &OscillatorSpec::hbar)
      .def_property_readonly("big_omega", &OscillatorSpec::big_omega)
      .def_property_readonly("strong_damping_warning",
                             &OscillatorSpec::strong_damping_warning)
      .def("__repr__", [](const OscillatorSpec& o) {
        std::ostringstream s;
        s << "OscillatorSpec(mass=" << o.mass() << ", omega=" << o.omega()
          << ", lam=" << o.lambda() << ", mu=" << o.mu() << ")";
        return s.str();
      });

  py::class_<DiffusionSpec>(m, "DiffusionSpec")
      .def(py::init([](double qq, double pp, double pq) {
             return DiffusionSpec{qq, pp, pq};
           }),
           py::arg("d_qq") = 0.0, py::arg("d_pp") = 0.0, py::arg("d_pq") = 0.0)
      .def_readwrite("d_qq", &DiffusionSpec::d_qq)
      .def_readwrite("d_pp", &DiffusionSpec::d_pp)
      .def_readwrite("d_pq", &DiffusionSpec::d_pq)
      .def("determinant", &DiffusionSpec::determinant);

  py::class_<GaussianState>(m, "GaussianState")
      .def(py::init([](double q, double p, double qq, double pp, double pq,
                       double t) { return GaussianState{q, p, qq, pp, pq, t}; }),
           py::arg("sigma_q") = 0.0, py::arg("sigma_p") = 0.0,
           py::arg("sigma_qq") = 0.5, py::arg("sigma_pp") = 0.5,
           py::arg("sigma_pq") = 0.0, py::arg("t") = 0.0)
      .def_readwrite("sigma_q", &GaussianState::sigma_q)
      .def_readwrite("sigma_p", &GaussianState::sigma_p)
      .def_readwrite("sigma_qq", &GaussianState::sigma_qq)
      .def_readwrite("sigma_pp", &GaussianState::sigma_pp)
      .def_readwrite("sigma_pq", &GaussianState::sigma_pq)
      .def_readwrite("t", &GaussianState::t)
      .def("uncertainty", &GaussianState::uncertainty);

  py::class_<ConstraintReport>(m, "ConstraintReport")
      .def_readonly("d_pp_positive", &ConstraintReport::d_pp_positive)
      .def_readonly("d_qq_positive", &ConstraintReport::d_qq_positive)
      .def_readonly("determinant_ok", &ConstraintReport::determinant_ok)
      .def_readonly("margin", &ConstraintReport::margin)
      .def("ok", &ConstraintReport::ok);

  py::class_<CoherentWindow>(m, "CoherentWindow")
      .def(py::init<double, double, double>(), py::arg("s_qq"), py::arg("s_pp"),
           py::arg("hbar") = 1.0)
      .def_static("matched", &CoherentWindow::matched)
      .def_property_readonly("s_qq", &CoherentWindow::s_qq)
      .def_property_readonly("s_pp", &CoherentWindow::s_pp);

  py::class_<CCSpec>(m, "CCSpec")
      .def(py::init<double, double, double, double, double>(), py::arg("eta"),
           py::arg("r"), py::arg("sigma_q") = 0.0, py::arg("sigma_p") = 0.0,
           py::arg("hbar") = 1.0)
      .def_static("from_alpha", &CCSpec::from_alpha)
      .def_static("coherent", &CCSpec::coherent)
      .def_property_readonly("eta", &CCSpec::eta)
      .def_property_readonly("r", &CCSpec::r)
      .def_property_readonly("alpha", &CCSpec::alpha)
      .def("state", &CCSpec::state, py::arg("t") = 0.0);

  m.def("validate", &validate, py::arg("diffusion"), py::arg("osc"));
  m.def("preset_gibbs", &preset_gibbs, py::arg("osc"), py::arg("temperature"));
  m.def("preset_pure_state", &preset_pure_state, py::arg("osc"));
  m.def("coefficients_from_ops",
        [](const std::vector<LindbladOps::Pair>& ops, const UnitSystem& units) {
          const auto c = coefficients_from_ops(LindbladOps(ops), units);
          return py::make_tuple(c.diffusion, c.lambda);
        },
        py::arg("ops"), py::arg("units") = UnitSystem{});
  m.def("ground_state", &ground_state, py::arg("mass") = 1.0,
        py::arg("omega") = 1.0, py::arg("hbar") = 1.0);

  m.def("evolve", &evolve, py::arg("osc"), py::arg("diffusion"),
        py::arg("state0"), py::arg("t"));
  m.def("steady_state", &steady_state, py::arg("osc"), py::arg("diffusion"));
  m.def("ode_oracle",
        py::overload_cast<const OscillatorSpec&, const DiffusionSpec&,
                          const GaussianState&, double, double>(&ode_oracle),
        py::arg("osc"), py::arg("diffusion"), py::arg("state0"), py::arg("t"),
        py::arg("step"));
  m.def("trajectory",
        [](const OscillatorSpec& osc, const DiffusionSpec& d,
           const GaussianState& s0, const std::vector<double>& times,
           bool thermal) {
          const Trajectory tr = sample_trajectory(
              osc, d, s0, times, {CoherentWindow::matched(osc), thermal});
          py::list out;
          for (const auto& p : tr) {
            out.append(py::make_tuple(p.state, scalars_dict(p.scalars)));
          }
          return out;
        },
        py::arg("osc"), py::arg("diffusion"), py::arg("state0"),
        py::arg("times"), py::arg("thermal") = false);

  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("state"),
        py::arg("hbar") = 1.0);
  m.def("purity_gamma", &purity_gamma, py::arg("state"), py::arg("hbar") = 1.0);
  m.def("linear_entropy", &linear_entropy, py::arg("state"), py::arg("hbar") = 1.0);
  m.def("wehrl_entropy", &wehrl_entropy_closed, py::arg("state"), py::arg("window"));
  m.def("fluctuation_energy", &fluctuation_energy, py::arg("osc"), py::arg("state"));
  m.def("effective_temperature",
        [](const OscillatorSpec& osc, const GaussianState& s) {
          return effective_temperature(osc, s).value;
        },
        py::arg("osc"), py::arg("state"));

  m.def("wigner_at", &wigner_at, py::arg("state"), py::arg("q"), py::arg("p"));
  m.def("husimi_at", &husimi_at, py::arg("state"), py::arg("window"),
        py::arg("q"), py::arg("p"));
  m.def("density_kernel_at", &density_kernel_at, py::arg("state"), py::arg("x"),
        py::arg("y"), py::arg("hbar") = 1.0);

  m.def("correlation_coefficient", &correlation_coefficient, py::arg("state"));
  m.def("identify_ccs", &identify_ccs, py::arg("state"), py::arg("hbar") = 1.0);
  m.def("is_pure_preserving",
        [](const OscillatorSpec& osc, const DiffusionSpec& d,
           const GaussianState& s) {
          return check_pure_preserving(osc, d, s).preserving;
        },
        py::arg("osc"), py::arg("diffusion"), py::arg("state"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
