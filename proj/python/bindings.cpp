// Thin pybind11 surface. Structured results cross the boundary as JSON text
// and are decoded on the Python side.

#include "sfg/donor_json.hpp"
#include "sfg/harness.hpp"
#include "sfg/integrals.hpp"
#include "sfg/lattice.hpp"
#include "sfg/spectra.hpp"
#include "sfg/spins.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using sfg::json::Json;

const sfg::donor::PresetCatalog& catalog() {
  // Re-read on every call so SFG_PRESETS changes take effect; the file is tiny.
  static thread_local sfg::donor::PresetCatalog cached;
  cached = sfg::donor::load_presets();
  return cached;
}

std::string curve_json(const std::vector<sfg::integrals::PairIntegralResult>& ground,
                       const std::vector<sfg::integrals::PairIntegralResult>& excited) {
  Json out = {{"R_angstrom", Json::array()}, {"J_ground_meV", Json::array()}, {"J_excited_meV", Json::array()}};
  for (std::size_t i = 0; i < ground.size(); ++i) {
    out["R_angstrom"].push_back(ground[i].separation);
    out["J_ground_meV"].push_back(ground[i].exchange_splitting);
    out["J_excited_meV"].push_back(excited[i].exchange_splitting);
  }
  return out.dump();
}

std::string gate_json(const sfg::spins::GateReport& r, const std::string& status) {
  Json u = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back({r.qubit_unitary(i, j).real(), r.qubit_unitary(i, j).imag()});
    u.push_back(row);
  }
  return Json{{"status", status},
              {"duration_ps", r.duration},
              {"control_residual_entanglement", r.control_residual_entanglement},
              {"entangling_power", r.entangling_power},
              {"qubit_unitary", u}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the donor-spin gate feasibility simulator";

  static py::exception<sfg::Error> error(m, "SimulatorError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const sfg::Error& e) {
      error(("[" + e.stage() + "] " + e.what()).c_str());
    }
  });

  m.def("count_sites", [](double radius, double lattice_constant, bool include_center) {
    return sfg::lattice::count_sites({lattice_constant, radius}, include_center);
  }, py::arg("radius"), py::arg("lattice_constant") = 3.567, py::arg("include_center") = true);

  m.def("shell_sizes", [](int n_shells, double lattice_constant) {
    const double probe = lattice_constant * (1.0 + 0.5 * n_shells);
    std::vector<std::tuple<double, std::int64_t, std::size_t>> out;
    for (const auto& s : sfg::lattice::shell_sizes({lattice_constant, probe}, n_shells).shells)
      out.emplace_back(s.radius, s.squared_units, s.site_count);
    return out;
  }, py::arg("n_shells") = 5, py::arg("lattice_constant") = 3.567);

  m.def("binomial_distribution", &sfg::lattice::binomial_distribution, py::arg("n"), py::arg("c"));

  m.def("donor_from_ionization", [](double binding_ev, double dielectric, double central_cell_ev) {
    return sfg::donor::to_json(sfg::donor::model_from_ionization(binding_ev, dielectric, central_cell_ev)).dump();
  }, py::arg("binding_ev"), py::arg("dielectric") = 5.7, py::arg("central_cell_ev") = 0.0);

  m.def("donor_presets", [] { return sfg::donor::dump_presets(catalog()); });

  m.def("exchange_curve", [](const std::string& control, const std::string& qubit, const std::vector<double>& r) {
    const auto& c = catalog().find(control);
    const auto& q = catalog().find(qubit);
    py::gil_scoped_release release;
    return curve_json(sfg::integrals::exchange_curve(c, q, false, r), sfg::integrals::exchange_curve(c, q, true, r));
  }, py::arg("control"), py::arg("qubit"), py::arg("r_angstrom"));

  m.def("transfer_splitting_curve", [](const std::string& control, const std::vector<double>& r) {
    const auto& c = catalog().find(control);
    py::gil_scoped_release release;
    Json out = {{"R_angstrom", Json::array()}, {"lower_meV", Json::array()}, {"upper_meV", Json::array()},
                {"transfer_meV", Json::array()}};
    for (const auto& p : sfg::integrals::transfer_splitting_curve(c, r)) {
      out["R_angstrom"].push_back(p.separation);
      out["lower_meV"].push_back(p.lower);
      out["upper_meV"].push_back(p.upper);
      out["transfer_meV"].push_back(p.transfer);
    }
    return out.dump();
  }, py::arg("control"), py::arg("r_angstrom"));

  m.def("effective_coupling", &sfg::spins::effective_coupling, py::arg("j1"), py::arg("j2"),
        py::arg("excitation_energy"));

  m.def("mean_resolvable_count", &sfg::spectra::mean_resolvable_count, py::arg("n_lines"),
        py::arg("homogeneous_width"), py::arg("inhomogeneous_width"), py::arg("k"), py::arg("draws"),
        py::arg("seed"));

  m.def("sfg_gate", [](double j1, double j2) {
    sfg::spins::SpinSystem s;
    const int c = s.add_spin("C", sfg::spins::SpinRole::control);
    s.set_coupling(c, s.add_spin("Q1", sfg::spins::SpinRole::qubit), j1);
    s.set_coupling(c, s.add_spin("Q2", sfg::spins::SpinRole::qubit), j2);
    try {
      return gate_json(sfg::spins::sfg_gate(s, c), "clean");
    } catch (const sfg::spins::NoCleanGateError& e) {
      return gate_json(e.best(), "no_clean_gate");
    }
  }, py::arg("j1"), py::arg("j2"));

  m.def("scenario_presets", &sfg::harness::preset_names);

  m.def("preset_scenario", [](const std::string& name) {
    return sfg::harness::dump_scenario(sfg::harness::preset(name, catalog()));
  }, py::arg("name"));

  m.def("run_scenario", [](const std::string& text, const std::string& generated_at) {
    const auto scenario = sfg::harness::parse_scenario(text, catalog());
    py::gil_scoped_release release;
    return sfg::harness::report_json(sfg::harness::run_feasibility(scenario), generated_at);
  }, py::arg("scenario_json"), py::arg("generated_at"));
}
