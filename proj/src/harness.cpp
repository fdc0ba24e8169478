#include "sfg/harness.hpp"

#include "sfg/error.hpp"
#include "sfg/units.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <future>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>

namespace sfg::harness {

namespace {

using json::Json;

constexpr double kTableStart = 2.0;  // angstrom; shorter separations are extrapolated
constexpr double kTableStep = 0.25;

std::vector<double> table_grid(double cutoff) {
  std::vector<double> g;
  for (double r = kTableStart; r <= cutoff + 2.0 + 1e-9; r += kTableStep) g.push_back(r);
  return g;
}

integrals::CurveOptions curve_options(const Scenario& s) {
  return {s.exchange.gaussian_terms, s.exchange.p_axis, s.exchange.fixed_axis};
}

std::vector<Dopant> collect_dopants(const Scenario& s, std::size_t& site_count) {
  std::vector<Dopant> dopants;
  if (s.random) {
    const auto region = lattice::place_dopants(s.lattice, s.random->concentration, s.random->mix, s.random->seed);
    site_count = region.site_count;
    int n_control = 0;
    int n_qubit = 0;
    for (const auto& p : region.placements) {
      const auto role = s.species_model(p.species).role;
      const auto label = role == donor::Role::control ? "C" + std::to_string(++n_control)
                                                      : "Q" + std::to_string(++n_qubit);
      dopants.push_back({label, p.species, role, p.site.position});
    }
  } else {
    site_count = s.lattice.bounding_radius > 0.0 ? lattice::count_sites(s.lattice) : 0;
    for (const auto& p : s.placements)
      dopants.push_back({p.label, p.species, s.species_model(p.species).role, p.position});
  }
  return dopants;
}

double spectral_base(const Scenario& s, const std::vector<Dopant>& dopants) {
  if (s.spectral.base_transition_energy > 0.0) return s.spectral.base_transition_energy;
  for (const auto& d : dopants)
    if (d.role == donor::Role::control) return integrals::base_transition_energy(s.species_model(d.species));
  for (const auto& sp : s.species)
    if (sp.model.role == donor::Role::control) return integrals::base_transition_energy(sp.model);
  return 450.0;
}

Json vector_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json unitary_json(const spins::Matrix4& u) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(Json::array({u(i, j).real(), u(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Json gate_report_json(const spins::GateReport& g) {
  Json out;
  out["duration_ps"] = g.duration;
  out["control_residual_entanglement_bits"] = g.control_residual_entanglement;
  out["entangling_power"] = g.entangling_power;
  if (g.fidelity_to_target) out["fidelity_to_target"] = *g.fidelity_to_target;
  out["qubit_unitary"] = unitary_json(g.qubit_unitary);
  return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

IntegralTables build_tables(const Scenario& s) {
  validate(s);
  IntegralTables tables;
  const auto grid = table_grid(s.exchange.cutoff);
  const auto options = curve_options(s);
  std::set<std::string> controls;
  std::set<std::string> qubits;
  for (const auto& sp : s.species)
    (sp.model.role == donor::Role::control ? controls : qubits).insert(sp.model.species_name);
  for (const auto& c : controls) {
    const auto& model = s.species_model(c);
    tables.transfer.emplace(c, spectra::TransferTable(integrals::transfer_splitting_curve(model, grid, options)));
    for (const auto& q : qubits) {
      const auto curve = integrals::exchange_curve(model, s.species_model(q), true, grid, options);
      std::vector<double> j;
      for (const auto& p : curve) j.push_back(p.exchange_splitting);
      tables.exchange.emplace(std::make_pair(c, q), integrals::ExchangeTable(grid, j));
    }
  }
  return tables;
}

namespace {

FeasibilityReport run(const Scenario& s, const IntegralTables* tables, bool run_sfg) {
  validate(s);
  FeasibilityReport report;
  report.scenario = s;
  report.dopants = collect_dopants(s, report.site_count);
  const auto options = curve_options(s);

  std::vector<const Dopant*> controls;
  std::vector<const Dopant*> qubits;
  for (const auto& d : report.dopants) (d.role == donor::Role::control ? controls : qubits).push_back(&d);

  // --- integrals: excited-control / qubit exchange --------------------------------
  Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(controls.size()),
                                                   static_cast<Eigen::Index>(qubits.size()));
  for (std::size_t ci = 0; ci < controls.size(); ++ci) {
    const auto& c = *controls[ci];
    for (std::size_t qi = 0; qi < qubits.size(); ++qi) {
      const auto& q = *qubits[qi];
      const Eigen::Vector3d offset = q.position - c.position;
      const double r = offset.norm();
      if (r > s.exchange.cutoff) continue;
      CouplingRow row{c.label, q.label, r, std::nullopt, 0.0};
      if (tables != nullptr) {
        row.exchange = tables->exchange.at({c.species, q.species})(r);
      } else {
        const auto setup = integrals::control_qubit_setup(s.species_model(c.species), s.species_model(q.species),
                                                          true, offset, options);
        const auto res = integrals::pair_integrals(setup.control, setup.qubit, setup.medium, setup.charges,
                                                   {s.exchange.gaussian_terms, true});
        row.overlap = res.overlap;
        row.exchange = res.exchange_splitting;
      }
      coupling(static_cast<Eigen::Index>(ci), static_cast<Eigen::Index>(qi)) = row.exchange;
      report.couplings.push_back(std::move(row));
    }
  }

  // --- spectra ----------------------------------------------------------------------
  auto model = s.spectral;
  model.base_transition_energy = spectral_base(s, report.dopants);
  model.resolution_factor = s.thresholds.resolution_k;
  std::vector<spectra::ControlSite> sites;
  for (const auto* c : controls) sites.push_back({c->label, c->position});
  spectra::TransferFunction transfer;
  if (controls.size() > 1) {
    const auto& species = controls.front()->species;
    const double cutoff = s.exchange.cutoff;
    if (tables != nullptr) {
      const auto& table = tables->transfer.at(species);
      transfer = [&table, cutoff](double r) { return r > cutoff ? 0.0 : table(r); };
    } else {
      const auto& control_model = s.species_model(species);
      transfer = [&control_model, options, cutoff](double r) {
        if (r > cutoff) return 0.0;
        return integrals::transfer_splitting_curve(control_model, {r}, options).front().transfer;
      };
    }
  }
  report.transitions = spectra::gate_transitions(sites, model, transfer, derive_seed(s.seed, 1));
  if (!report.transitions.empty())
    report.resolvable_gate_count =
        spectra::resolvable_gate_count(report.transitions, model.homogeneous_width, model.resolution_factor);

  // --- spins: per-control gates -----------------------------------------------------
  std::vector<double> usable_energies;
  std::set<std::string> addressed_qubits;
  spins::GateSearch search;
  search.residual_threshold = s.thresholds.disentangle_bits;
  for (std::size_t ci = 0; ci < controls.size(); ++ci) {
    GateRow row;
    row.control = controls[ci]->label;
    std::vector<std::size_t> attached;
    for (std::size_t qi = 0; qi < qubits.size(); ++qi) {
      const double j = coupling(static_cast<Eigen::Index>(ci), static_cast<Eigen::Index>(qi));
      if (std::abs(j) >= s.thresholds.detection) {
        attached.push_back(qi);
        row.qubits.push_back(qubits[qi]->label);
        row.couplings.push_back(j);
      }
    }
    if (attached.empty()) continue;
    for (std::size_t a = 0; a < attached.size(); ++a)
      for (std::size_t b = a + 1; b < attached.size(); ++b) {
        EffectiveCouplingRow e;
        e.qubit_a = row.qubits[a];
        e.qubit_b = row.qubits[b];
        e.j_eff = spins::effective_coupling(row.couplings[a], row.couplings[b], s.excitation_energy);
        e.gate_time = units::kPi * units::kHbarMevPs / std::abs(e.j_eff);
        const double t2a = s.species_model(qubits[attached[a]]->species).t2;
        const double t2b = s.species_model(qubits[attached[b]]->species).t2;
        if (t2a > 0.0 && t2b > 0.0) e.t2_ratio = e.gate_time * 1e-12 / std::min(t2a, t2b);
        row.effective.push_back(e);
      }
    row.sfg_status = "not_applicable";
    if (attached.size() == 2 && run_sfg) {
      spins::SpinSystem system;
      const int c = system.add_spin(row.control, spins::SpinRole::control);
      const int q1 = system.add_spin(row.qubits[0], spins::SpinRole::qubit);
      const int q2 = system.add_spin(row.qubits[1], spins::SpinRole::qubit);
      system.set_coupling(c, q1, row.couplings[0]);
      system.set_coupling(c, q2, row.couplings[1]);
      try {
        row.sfg = spins::sfg_gate(system, c, search);
        row.sfg_status = "clean";
      } catch (const spins::NoCleanGateError& e) {
        row.sfg = e.best();
        row.sfg_status = "no_clean_gate";
      }
    }
    if (attached.size() >= 2) {
      usable_energies.push_back(report.transitions[ci].energy);
      addressed_qubits.insert(row.qubits.begin(), row.qubits.end());
    }
    report.gates.push_back(std::move(row));
  }
  if (!usable_energies.empty())
    report.usable_gate_count =
        spectra::resolvable_gate_count(usable_energies, model.homogeneous_width, model.resolution_factor);

  // --- configure: recover adjacency from a simulated scan ---------------------------
  if (s.run_configure && !controls.empty() && !qubits.empty()) {
    configure::ScanTruth truth;
    for (std::size_t ci = 0; ci < controls.size(); ++ci)
      truth.controls.push_back({controls[ci]->label, report.transitions[ci].energy});
    const auto positions = configure::sample_epr_positions(qubits.size(), s.epr, derive_seed(s.seed, 2));
    for (std::size_t qi = 0; qi < qubits.size(); ++qi) truth.qubits.push_back({qubits[qi]->label, positions[qi]});
    truth.couplings = coupling;
    truth.homogeneous_width = model.homogeneous_width;

    auto& outcome = report.adjacency;
    outcome.attempted = true;
    for (const auto& g : report.gates) outcome.truth[g.control] = g.qubits;
    const auto scan = configure::simulate_scan(truth, s.epr);
    outcome.inferred = configure::infer_adjacency(scan, s.thresholds.detection);
    bool ok = true;
    for (const auto& [label, truth_qubits] : outcome.truth) {
      const auto* h = outcome.inferred.find(label);
      ok = ok && h != nullptr && !h->ambiguous && as_set(h->qubits) == as_set(truth_qubits);
    }
    for (const auto& h : outcome.inferred.controls)
      ok = ok && (h.qubits.empty() || outcome.truth.contains(h.label));
    outcome.recovered = ok;
  }

  report.meets_targets = static_cast<int>(addressed_qubits.size()) >= s.targets.n_qubits &&
                         report.usable_gate_count >= s.targets.n_gates;
  return report;
}

}  // namespace

FeasibilityReport run_feasibility(const Scenario& scenario) {
  if (scenario.random) {
    const auto tables = build_tables(scenario);
    return run(scenario, &tables, true);
  }
  return run(scenario, nullptr, true);
}

FeasibilityReport run_feasibility(const Scenario& scenario, const IntegralTables& tables) {
  return run(scenario, &tables, true);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string report_json(const FeasibilityReport& r, const std::string& generated_at) {
  Json root;
  root["schema_version"] = kSchemaVersion;
  root["generated_at"] = generated_at;
  root["scenario"] = scenario_to_json(r.scenario);
  root["site_count"] = r.site_count;

  Json dopants = Json::array();
  for (const auto& d : r.dopants)
    dopants.push_back({{"label", d.label},
                       {"species", d.species},
                       {"role", donor::to_string(d.role)},
                       {"position_angstrom", vector_json(d.position)}});
  root["dopants"] = dopants;

  Json couplings = Json::array();
  for (const auto& c : r.couplings) {
    Json row{{"control", c.control}, {"qubit", c.qubit}, {"separation_angstrom", c.separation}};
    if (c.overlap) row["overlap"] = *c.overlap;
    row["J_excited_meV"] = c.exchange;
    couplings.push_back(row);
  }
  root["couplings"] = couplings;

  Json transitions = Json::array();
  for (const auto& t : r.transitions) {
    Json shifts = Json::object();
    for (const auto& [name, value] : t.shift_breakdown) shifts[name] = value;
    transitions.push_back({{"gate_id", t.gate_id}, {"energy_meV", t.energy}, {"width_meV", t.width}, {"shifts", shifts}});
  }
  root["transitions"] = transitions;

  Json gates = Json::array();
  for (const auto& g : r.gates) {
    Json row{{"control", g.control}, {"qubits", g.qubits}, {"J_meV", g.couplings}};
    Json effective = Json::array();
    for (const auto& e : g.effective) {
      Json item{{"qubit_a", e.qubit_a}, {"qubit_b", e.qubit_b}, {"J_eff_meV", e.j_eff}, {"gate_time_ps", e.gate_time}};
      if (e.t2_ratio) item["gate_time_over_T2"] = *e.t2_ratio;
      effective.push_back(item);
    }
    row["effective"] = effective;
    row["sfg_status"] = g.sfg_status;
    if (g.sfg) row["sfg"] = gate_report_json(*g.sfg);
    gates.push_back(row);
  }
  root["gates"] = gates;

  Json adjacency{{"attempted", r.adjacency.attempted}};
  if (r.adjacency.attempted) {
    adjacency["recovered"] = r.adjacency.recovered;
    Json truth = Json::object();
    for (const auto& [label, qs] : r.adjacency.truth) truth[label] = qs;
    adjacency["truth"] = truth;
    Json inferred = Json::array();
    for (const auto& h : r.adjacency.inferred.controls)
      inferred.push_back({{"label", h.label},
                          {"optical_energy_meV", h.optical_energy},
                          {"qubits", h.qubits},
                          {"J_meV", h.couplings},
                          {"ambiguous", h.ambiguous}});
    adjacency["inferred"] = inferred;
  }
  root["adjacency"] = adjacency;

  root["summary"] = {{"resolvable_gate_count", r.resolvable_gate_count},
                     {"usable_gate_count", r.usable_gate_count},
                     {"meets_targets", r.meets_targets}};
  return root.dump(2) + "\n";
}

PatchStatistics patch_statistics(const Scenario& tmpl, int n_patches, std::uint64_t seed) {
  if (n_patches < 1) throw PreconditionError("harness", "n_patches must be >= 1");
  if (!tmpl.random) throw PreconditionError("harness", "patch statistics need a random_placement scenario");
  const auto tables = build_tables(tmpl);

  std::vector<std::future<FeasibilityReport>> jobs;
  jobs.reserve(static_cast<std::size_t>(n_patches));
  for (int i = 0; i < n_patches; ++i) {
    auto s = tmpl;
    s.run_configure = false;
    s.random->seed = derive_seed(seed, 2 * static_cast<std::uint64_t>(i));
    s.seed = derive_seed(seed, 2 * static_cast<std::uint64_t>(i) + 1);
    jobs.push_back(std::async(std::launch::async, [s = std::move(s), &tables] { return run(s, &tables, false); }));
  }

  PatchStatistics stats;
  stats.n_patches = n_patches;
  stats.seed = seed;
  stats.target = tmpl.targets.n_gates;
  int meeting = 0;
  for (auto& job : jobs) {
    const auto report = job.get();
    stats.usable_gates.push_back(report.usable_gate_count);
    stats.resolvable_gates.push_back(report.resolvable_gate_count);
    stats.dopant_counts.push_back(report.dopants.size());
    ++stats.histogram[report.usable_gate_count];
    if (report.usable_gate_count >= stats.target) ++meeting;
  }
  stats.fraction_meeting_target = static_cast<double>(meeting) / n_patches;
  return stats;
}

std::string patch_statistics_json(const PatchStatistics& stats, const Scenario& tmpl, const std::string& generated_at) {
  Json root;
  root["schema_version"] = kSchemaVersion;
  root["generated_at"] = generated_at;
  root["scenario"] = scenario_to_json(tmpl);
  root["n_patches"] = stats.n_patches;
  root["seed"] = stats.seed;
  root["target_gates"] = stats.target;
  root["usable_gates"] = stats.usable_gates;
  root["resolvable_gates"] = stats.resolvable_gates;
  root["dopant_counts"] = stats.dopant_counts;
  Json histogram = Json::array();
  for (const auto& [gates, count] : stats.histogram) histogram.push_back({{"usable_gates", gates}, {"patches", count}});
  root["histogram"] = histogram;
  root["fraction_meeting_target"] = stats.fraction_meeting_target;
  return root.dump(2) + "\n";
}

}  // namespace sfg::harness
