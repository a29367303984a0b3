#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>

#include "kleingate/cascade.hpp"
#include "kleingate/coupling.hpp"
#include "kleingate/error.hpp"
#include "kleingate/gates.hpp"
#include "kleingate/kinematics.hpp"
#include "kleingate/scattering.hpp"

namespace py = pybind11;
using namespace kleingate;

namespace {

PhysicalConstants consts_of(double hbar_vf) { return PhysicalConstants{hbar_vf}; }

SpinState spin_of(const std::string& s) {
  if (s == "up") return SpinState::spin_up();
  if (s == "down") return SpinState::spin_down();
  throw Error(ErrorKind::Domain, "spin must be 'up' or 'down'");
}

std::optional<Spin> postselect_of(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  if (*s == "up") return Spin::Up;
  if (*s == "down") return Spin::Down;
  throw Error(ErrorKind::Domain, "postselect must be 'up', 'down' or None");
}

constexpr double kDefaultH = 6.582;

}  // namespace

PYBIND11_MODULE(kleingate, m) {
  m.doc() = "Spin-exchange scattering of graphene electrons off quantum dots, as two-qubit gates";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  // Kinematics.
  m.def("band_gap",
        [](double width, int mode, int branch, double h) {
          return band_gap(RibbonConfig{width, mode, branch}, consts_of(h));
        },
        py::arg("width"), py::arg("mode") = 0, py::arg("branch") = 1, py::arg("hbar_vf") = kDefaultH,
        "Band gap in eV of an armchair ribbon of the given width (angstrom).");
  m.def("incidence_angle",
        [](double energy, double width, int mode, int branch, double h) {
          return electron_kinematics(energy, RibbonConfig{width, mode, branch}, consts_of(h)).theta;
        },
        py::arg("energy"), py::arg("width"), py::arg("mode") = 0, py::arg("branch") = 1,
        py::arg("hbar_vf") = kDefaultH, "Incidence angle in radians for energy (eV) and width (angstrom).");
  m.def("de_broglie_wavelength",
        [](double energy, double h) { return de_broglie_wavelength(energy, consts_of(h)); },
        py::arg("energy"), py::arg("hbar_vf") = kDefaultH);
  m.def("validate_delta_regime",
        [](double dot_length, double energy, double separation, double h) {
          const auto r = validate_delta_regime(dot_length, energy, separation, consts_of(h));
          py::dict d;
          d["wavelength"] = r.wavelength;
          d["delta_regime_ok"] = r.delta_regime_ok;
          d["ratio_5dx_over_lambda"] = r.ratio_5dx_over_lambda;
          d["within_inelastic_length"] = r.within_inelastic_length;
          return d;
        },
        py::arg("dot_length"), py::arg("energy"), py::arg("separation"), py::arg("hbar_vf") = kDefaultH);

  // Scattering.
  py::class_<SpinResolvedAmplitudes>(m, "Amplitudes")
      .def_readonly("t_n", &SpinResolvedAmplitudes::t_n)
      .def_readonly("t_s", &SpinResolvedAmplitudes::t_s)
      .def_readonly("r_n", &SpinResolvedAmplitudes::r_n)
      .def_readonly("r_s", &SpinResolvedAmplitudes::r_s)
      .def_readonly("t_aligned", &SpinResolvedAmplitudes::t_aligned)
      .def_readonly("r_aligned", &SpinResolvedAmplitudes::r_aligned)
      .def("total_probability", &SpinResolvedAmplitudes::total_probability)
      .def("__repr__", [](const SpinResolvedAmplitudes& a) {
        return "<Amplitudes |t_n|^2=" + std::to_string(std::norm(a.t_n)) +
               " |t_s|^2=" + std::to_string(std::norm(a.t_s)) + ">";
      });

  m.def("amplitudes",
        [](double coupling, double theta, int s, double h) {
          return spin_resolved_amplitudes({coupling, theta, s, consts_of(h)});
        },
        py::arg("coupling"), py::arg("theta") = 0.0, py::arg("s") = 1, py::arg("hbar_vf") = kDefaultH,
        "Spin-resolved amplitudes for coupling J (eV*angstrom) and incidence angle theta.");
  m.def("closed_form_theta0",
        [](double coupling, double h) {
          const auto f = closed_form_theta0(coupling, consts_of(h));
          return py::make_tuple(f.t_n, f.t_s);
        },
        py::arg("coupling"), py::arg("hbar_vf") = kDefaultH, "(t_n, t_s) at normal incidence.");
  m.def("direct_solve",
        [](double coupling, double theta, const std::string& electron, const std::string& dot, int s, double h) {
          const auto sol =
              direct_solve({coupling, theta, s, consts_of(h)}, {spin_of(electron), spin_of(dot)});
          py::dict d;
          d["transmitted"] = std::vector<cplx>(sol.transmitted.begin(), sol.transmitted.end());
          d["reflected"] = std::vector<cplx>(sol.reflected.begin(), sol.reflected.end());
          d["rcond"] = sol.rcond;
          return d;
        },
        py::arg("coupling"), py::arg("theta") = 0.0, py::arg("electron") = "up", py::arg("dot") = "down",
        py::arg("s") = 1, py::arg("hbar_vf") = kDefaultH,
        "Full 8x8 boundary solve; amplitudes indexed uu, ud, du, dd (electron first).");

  // Gates.
  m.def("gate_condition", &gate_condition, py::arg("t_n"), py::arg("t_s"));
  m.def("success_probability", &success_probability, py::arg("t_n"), py::arg("t_s"));
  m.def("concurrence", &concurrence, py::arg("state"));
  m.def("swap_coupling", [](double h) { return find_swap_coupling(consts_of(h)); },
        py::arg("hbar_vf") = kDefaultH);
  m.def("sqrt_swap_couplings", [](double h) { return find_sqrt_swap_couplings(consts_of(h)); },
        py::arg("hbar_vf") = kDefaultH);
  m.def("swap_coupling_closed_form", [](double h) { return swap_coupling_closed_form(consts_of(h)); },
        py::arg("hbar_vf") = kDefaultH);
  m.def("sqrt_swap_couplings_closed_form",
        [](double h) { return sqrt_swap_couplings_closed_form(consts_of(h)); }, py::arg("hbar_vf") = kDefaultH);
  m.def("classify_gate",
        [](double coupling, double theta, double tol_unitary, double tol_class, double h) {
          const auto r = classify_gate({coupling, theta, 1, consts_of(h)}, tol_unitary, tol_class);
          py::dict d;
          d["classification"] = std::string(to_string(r.classification));
          d["gate_condition"] = r.gate_condition;
          d["success_probability"] = r.success_probability;
          d["concurrence_of_output"] = r.concurrence_of_output;
          return d;
        },
        py::arg("coupling"), py::arg("theta") = 0.0, py::arg("tol_unitary") = kDefaultUnitaryTolerance,
        py::arg("tol_class") = kDefaultClassTolerance, py::arg("hbar_vf") = kDefaultH);

  // Cascade.
  m.def("cascade",
        [](const SpinResolvedAmplitudes& g1, const SpinResolvedAmplitudes& g2, const std::string& electron,
           const std::string& dot1, const std::string& dot2, const std::optional<std::string>& postselect) {
          CascadeConfig cfg;
          cfg.gate1 = g1;
          cfg.gate2 = g2;
          cfg.electron = spin_of(electron);
          cfg.dot1 = spin_of(dot1);
          cfg.dot2 = spin_of(dot2);
          cfg.postselect = postselect_of(postselect);
          const auto r = run_cascade(cfg);
          py::dict d;
          d["joint_state"] = Eigen::VectorXcd(r.joint_state);
          d["p_transmit_both"] = r.p_transmit_both;
          for (const auto& o : r.outcomes) {
            py::dict od;
            od["dots"] = Eigen::VectorXcd(o.dots);
            od["probability"] = o.probability;
            od["concurrence"] = o.concurrence;
            od["empty"] = o.empty;
            d[o.electron == Spin::Up ? "up" : "down"] = od;
          }
          return d;
        },
        py::arg("gate1"), py::arg("gate2"), py::arg("electron") = "up", py::arg("dot1") = "down",
        py::arg("dot2") = "down", py::arg("postselect") = py::none(),
        "Electron scattering off two dots in series; outcomes keyed by electron spin.");

  // Coupling.
  m.def("coupling_J", &coupling_J, py::arg("dot_length"), py::arg("t"), py::arg("U"),
        "J = 4 dx t^2 / U in eV*angstrom.");
  m.def("estimate_coupling",
        [](double dot_length, double width, double energy, std::uint64_t samples, std::uint64_t seed, double h) {
          CoulombOptions opts;
          opts.samples = samples;
          opts.seed = seed;
          const auto e = estimate_coupling({dot_length, width}, energy, opts, consts_of(h));
          py::dict d;
          d["t"] = e.t_overlap;
          d["U"] = e.U_coulomb;
          d["J"] = e.J;
          d["t_error"] = e.t_error;
          d["U_error"] = e.U_error;
          d["seed"] = e.seed;
          return d;
        },
        py::arg("dot_length"), py::arg("width"), py::arg("energy"), py::arg("samples") = std::uint64_t{1} << 20,
        py::arg("seed") = CoulombOptions{}.seed, py::arg("hbar_vf") = kDefaultH,
        "t, U (eV) and J from the default dot/ballistic wavefunction models; lengths in angstrom.");
}
