#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrabi/cli.hpp"
#include "qrabi/constants.hpp"
#include "qrabi/coupling.hpp"
#include "qrabi/dynamics.hpp"
#include "qrabi/fit.hpp"
#include "qrabi/photons.hpp"
#include "qrabi/specfun.hpp"
#include "qrabi/transition.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

using namespace qrabi;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Generalized Einstein coefficients and quantum Rabi dynamics";

    auto con = m.def_submodule("constants");
    con.attr("hbar") = constants::codata2018.hbar;
    con.attr("kB") = constants::codata2018.kB;
    con.attr("c") = constants::codata2018.c;
    con.attr("epsilon0") = constants::codata2018.epsilon0;
    con.attr("a0") = constants::codata2018.a0;
    con.attr("e") = constants::codata2018.e;
    con.def("dipole_from_a0e", &constants::dipole_from_a0e, "multiple"_a);

    auto sf = m.def_submodule("specfun");
    sf.def("bessel_j0", &specfun::bessel_j0, "x"_a);
    sf.def("bessel_j1", &specfun::bessel_j1, "x"_a);
    sf.def("j0_zero", &specfun::j0_zero, "j"_a);
    sf.def("hyp1f2_kernel", &specfun::hyp1f2_kernel, "x"_a);
    sf.def("polylog_neg_half", &specfun::polylog_neg_half, "x"_a);
    sf.def("abs_j0_integral", &specfun::abs_j0_integral, "omega_r"_a, "t"_a);

    py::class_<photons::PhotonField>(m, "PhotonField")
        .def_static("thermal", &photons::PhotonField::thermal, "omega0"_a,
                    "temperature"_a)
        .def_static("coherent", &photons::PhotonField::coherent, "omega0"_a,
                    "nbar"_a)
        .def_property_readonly("omega0",
                               [](const photons::PhotonField& f) { return f.omega0; })
        .def("mean_photon_number",
             [](const photons::PhotonField& f) { return photons::mean_photon_number(f); })
        .def("occupation_probability",
             [](const photons::PhotonField& f, std::size_t n) {
                 return photons::occupation_probability(f, n);
             },
             "n"_a)
        .def("fluctuation", [](const photons::PhotonField& f) {
            return photons::photon_number_fluctuation(f);
        });
    m.def("planck_density_per_photon", &photons::planck_density_per_photon, "omega0"_a);

    py::class_<coupling::TwoLevelSystem>(m, "TwoLevelSystem")
        .def(py::init<double, double>(), "omega0"_a, "d21"_a)
        .def_readonly("omega0", &coupling::TwoLevelSystem::omega0)
        .def_readonly("d21", &coupling::TwoLevelSystem::d21);

    py::class_<coupling::CavityGeometry>(m, "CavityGeometry")
        .def(py::init<double, double, double>(), "q_factor"_a, "mirror_radius"_a,
             "mirror_separation"_a)
        .def("escape_probability", &coupling::CavityGeometry::escape_probability);

    py::enum_<coupling::Scenario>(m, "Scenario")
        .value("FreeSpace", coupling::Scenario::FreeSpace)
        .value("BlackbodyThermal", coupling::Scenario::BlackbodyThermal)
        .value("LossyThermal", coupling::Scenario::LossyThermal)
        .value("LossyCoherent", coupling::Scenario::LossyCoherent);

    py::class_<coupling::CouplingSolution>(m, "CouplingSolution")
        .def_readonly("g_prime", &coupling::CouplingSolution::g_prime)
        .def_readonly("omega_rabi", &coupling::CouplingSolution::omega_rabi)
        .def_readonly("a0", &coupling::CouplingSolution::a0_coefficient)
        .def_readonly("b0", &coupling::CouplingSolution::b0_coefficient)
        .def_property_readonly("q_net",
                               [](const coupling::CouplingSolution& s) {
                                   return s.q_net ? py::cast(*s.q_net)
                                                  : py::none().cast<py::object>();
                               })
        .def_readonly("scenario", &coupling::CouplingSolution::scenario);

    m.def("free_space_a0", &coupling::free_space_a0, "system"_a);
    m.def("einstein_b0", &coupling::einstein_b0, "system"_a);
    m.def("renorm_blackbody", &coupling::renorm_blackbody, "a0"_a, "nbar"_a);
    m.def("net_quality_factor", &coupling::net_quality_factor, "geometry"_a,
          "a0_enhanced"_a, "omega0"_a);
    m.def("lossy_fixed_point", &coupling::lossy_fixed_point, "a0"_a, "nbar"_a,
          "q_net"_a, "omega0"_a);
    m.def("invert_a0_from_rabi", &coupling::invert_a0_from_rabi, "omega_rabi"_a,
          "nbar"_a, "q_net"_a, "omega0"_a);
    m.def("solve_cavity_coupled", &coupling::solve_cavity_coupled, "omega_rabi"_a,
          "nbar"_a, "geometry"_a, "omega0"_a);
    m.def("renorm_coherent", &coupling::renorm_coherent, "a0"_a, "nbar"_a,
          "q_net"_a, "omega0"_a);
    m.def("blackbody_solution", &coupling::blackbody_solution, "system"_a, "field"_a);

    py::enum_<transition::CavityMode>(m, "CavityMode")
        .value("Ideal", transition::CavityMode::Ideal)
        .value("Lossy", transition::CavityMode::Lossy);
    py::enum_<transition::CoefficientMode>(m, "CoefficientMode")
        .value("Exact", transition::CoefficientMode::Exact)
        .value("Approx", transition::CoefficientMode::Approx);

    py::class_<transition::TransitionModel>(m, "TransitionModel")
        .def_static("make", &transition::TransitionModel::make, "system"_a,
                    "field"_a, "solution"_a, "mode"_a);
    m.def("prob_ideal", &transition::prob_ideal, "model"_a, "t"_a);
    m.def("prob_lossy", &transition::prob_lossy, "model"_a, "t"_a);
    m.def("prob_lossy_low_nbar", &transition::prob_lossy_low_nbar, "model"_a, "t"_a);
    m.def("absorption_prob", &transition::absorption_prob, "model"_a, "t"_a);
    m.def("generalized_A", &transition::generalized_A, "solution"_a, "field"_a,
          "t"_a, "mode"_a = transition::CoefficientMode::Approx);
    m.def("generalized_B21", &transition::generalized_B21, "solution"_a, "field"_a,
          "t"_a, "mode"_a = transition::CoefficientMode::Approx);
    m.def("emission_rate", &transition::emission_rate, "model"_a, "t"_a,
          "mode"_a = transition::CoefficientMode::Approx);
    m.def("absorption_rate", &transition::absorption_rate, "model"_a, "t"_a,
          "mode"_a = transition::CoefficientMode::Approx);

    py::class_<dynamics::PopulationState>(m, "PopulationState")
        .def_readonly("p1", &dynamics::PopulationState::p1)
        .def_readonly("p2", &dynamics::PopulationState::p2)
        .def_readonly("t", &dynamics::PopulationState::t);
    py::class_<dynamics::RateParams>(m, "RateParams")
        .def(py::init<double, double, double>(), "a0"_a, "r0"_a, "omega_rabi"_a)
        .def_readonly("a0", &dynamics::RateParams::a0)
        .def_readonly("r0", &dynamics::RateParams::r0)
        .def_readonly("omega_rabi", &dynamics::RateParams::omega_rabi);
    m.def("einstein_solution", &dynamics::einstein_solution, "params"_a,
          "p2_init"_a, "t"_a);
    m.def("generalized_solution", &dynamics::generalized_solution, "params"_a,
          "p2_init"_a, "t"_a);
    m.def("ode_oracle",
          [](const dynamics::RateParams& params, double p2_init,
             const std::vector<double>& grid) {
              auto series = dynamics::ode_oracle(params, p2_init, grid);
              py::dict out;
              out["t"] = series.t;
              for (const auto& [name, values] : series.channels) {
                  out[name.c_str()] = values;
              }
              return out;
          },
          "params"_a, "p2_init"_a, "t_grid"_a);
    m.def("entropy", &dynamics::entropy, "state"_a);
    m.def("average_entropy", &dynamics::average_entropy, "params"_a,
          "temperature"_a, "omega0"_a, "t"_a);

    py::class_<fit::FitResult>(m, "FitResult")
        .def_readonly("parameters", &fit::FitResult::parameters)
        .def_readonly("residual_rms", &fit::FitResult::residual_rms)
        .def_readonly("iterations", &fit::FitResult::iterations)
        .def_readonly("converged", &fit::FitResult::converged);
    m.def("fit_trace",
          [](const std::vector<std::tuple<double, double, double>>& samples,
             double omega0, const std::map<std::string, double>& defaults,
             const std::vector<std::string>& vary,
             const std::map<std::string, std::pair<double, double>>& bounds,
             std::uint64_t seed) {
              fit::TraceData data;
              for (const auto& [t, v, w] : samples) data.samples.push_back({t, v, w});
              fit::RabiTraceModel model;
              model.omega0 = omega0;
              for (const auto& [name, value] : defaults) {
                  if (!model.defaults.count(name)) {
                      throw std::invalid_argument("unknown parameter " + name);
                  }
                  model.defaults[name] = value;
              }
              std::map<std::string, fit::FitBounds> b;
              for (const auto& [name, lu] : bounds) b[name] = {lu.first, lu.second};
              return fit::fit_trace(data, model, vary, b, seed);
          },
          "samples"_a, "omega0"_a, "defaults"_a, "vary"_a, "bounds"_a, "seed"_a = 0);
}
