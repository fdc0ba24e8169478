// sfgsim: command-line front end to the SFG feasibility simulator.

#include "sfg/configure.hpp"
#include "sfg/donor.hpp"
#include "sfg/donor_json.hpp"
#include "sfg/error.hpp"
#include "sfg/harness.hpp"
#include "sfg/integrals.hpp"
#include "sfg/lattice.hpp"
#include "sfg/spectra.hpp"
#include "sfg/spins.hpp"
#include "sfg/units.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using sfg::json::Json;

enum class Format { csv, json };

struct Common {
  std::uint64_t seed = 0;
  std::string out = "-";
  Format format = Format::csv;
  CLI::Option* seed_option = nullptr;

  bool seed_given() const { return seed_option != nullptr && seed_option->count() > 0; }
};

void add_common(CLI::App* cmd, Common& common, Format default_format) {
  common.format = default_format;
  common.seed_option = cmd->add_option("--seed", common.seed, "RNG seed");
  cmd->add_option("--out", common.out, "output file ('-' for stdout)");
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  cmd->add_option("--format", common.format, "csv or json")->transform(CLI::CheckedTransformer(formats));
}

void emit(const Common& common, const std::string& text) {
  if (common.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(common.out);
  if (!out) throw sfg::PreconditionError("io", "cannot write " + common.out);
  out << text;
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

/// Rows of numbers or strings rendered as CSV or as a JSON array of objects.
// RFC 4180 quoting, only when needed.
std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  std::string render(Format format) const {
    if (format == Format::json) {
      Json out = Json::array();
      for (const auto& row : rows) {
        Json item;
        for (std::size_t i = 0; i < columns.size(); ++i) item[columns[i]] = row[i];
        out.push_back(item);
      }
      return out.dump(2) + "\n";
    }
    std::ostringstream s;
    for (std::size_t i = 0; i < columns.size(); ++i) s << (i ? "," : "") << columns[i];
    s << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        s << (i ? "," : "");
        if (row[i].is_number_float())
          s << number(row[i].get<double>());
        else if (row[i].is_string())
          s << csv_field(row[i].get<std::string>());
        else
          s << row[i].dump();
      }
      s << "\n";
    }
    return s.str();
  }
};

struct ScenarioSource {
  std::string file;
  std::string preset;

  void add(CLI::App* cmd) {
    auto* f = cmd->add_option("--scenario", file, "scenario JSON file");
    auto* p = cmd->add_option("--preset", preset, "built-in scenario preset");
    f->excludes(p);
  }

  bool given() const { return !file.empty() || !preset.empty(); }

  sfg::harness::Scenario load(const sfg::donor::PresetCatalog& catalog) const {
    if (!file.empty()) return sfg::harness::load_scenario(file, catalog);
    if (!preset.empty()) return sfg::harness::preset(preset, catalog);
    throw sfg::PreconditionError("cli", "give --scenario or --preset");
  }
};

std::vector<double> grid(double lo, double hi, double step) {
  return sfg::harness::CurveSpec{sfg::harness::CurveSpec::Kind::exchange, "", "", lo, hi, step}.grid();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFG donor-spin gate feasibility simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sfgsim 1.0");
  std::string preset_file;
  app.add_option("--presets", preset_file, "donor preset catalog (default: SFG_PRESETS or the shipped catalog)");

  auto catalog = [&] {
    return preset_file.empty() ? sfg::donor::load_presets() : sfg::donor::load_presets(preset_file);
  };

  // --- lattice -----------------------------------------------------------------
  auto* lattice_cmd = app.add_subcommand("lattice", "diamond lattice enumeration");
  lattice_cmd->require_subcommand(1);
  Common lc;
  std::vector<double> count_radii;
  double lattice_constant = 3.567;
  bool exclude_center = false;
  auto* count_cmd = lattice_cmd->add_subcommand("count", "sites within a sphere");
  add_common(count_cmd, lc, Format::csv);
  count_cmd->add_option("--radius", count_radii, "sphere radii, angstrom")->required()->expected(1, -1);
  count_cmd->add_option("--lattice-constant", lattice_constant, "angstrom");
  count_cmd->add_flag("--exclude-center", exclude_center, "do not count the central atom");
  count_cmd->callback([&] {
    Table t{{"radius_angstrom", "sites", "continuum_estimate"}, {}};
    for (double r : count_radii)
      t.rows.push_back({r, sfg::lattice::count_sites({lattice_constant, r}, !exclude_center),
                        sfg::lattice::continuum_site_estimate(r, lattice_constant)});
    emit(lc, t.render(lc.format));
  });

  Common ls;
  int n_shells = 5;
  auto* shells_cmd = lattice_cmd->add_subcommand("shells", "neighbour shells around an atom");
  add_common(shells_cmd, ls, Format::csv);
  shells_cmd->add_option("--shells", n_shells, "number of shells")->check(CLI::PositiveNumber);
  shells_cmd->add_option("--lattice-constant", lattice_constant, "angstrom");
  shells_cmd->callback([&] {
    const auto offsets = sfg::lattice::shell_offsets(n_shells);
    std::int64_t reach = 0;
    for (const auto& o : offsets) reach = std::max(reach, o.norm2());
    const double radius = lattice_constant / 4.0 * std::sqrt(static_cast<double>(reach)) + 1e-9;
    const auto table = sfg::lattice::shell_sizes({lattice_constant, radius}, n_shells);
    Table t{{"shell", "radius_angstrom", "squared_units", "sites"}, {}};
    int i = 0;
    for (const auto& s : table.shells) t.rows.push_back({++i, s.radius, s.squared_units, s.site_count});
    emit(ls, t.render(ls.format));
  });

  // --- dope ----------------------------------------------------------------------
  auto* dope_cmd = app.add_subcommand("dope", "random doping");
  dope_cmd->require_subcommand(1);
  Common ds;
  double concentration = 0.01;
  double dope_radius = 120.0;
  int dope_shells = 5;
  auto* stats_cmd = dope_cmd->add_subcommand("stats", "neighbour-count statistics vs the binomial law");
  add_common(stats_cmd, ds, Format::csv);
  stats_cmd->add_option("--concentration", concentration, "atomic fraction");
  stats_cmd->add_option("--radius", dope_radius, "region radius, angstrom");
  stats_cmd->add_option("--shells", dope_shells, "neighbour shells");
  stats_cmd->add_option("--lattice-constant", lattice_constant, "angstrom");
  stats_cmd->callback([&] {
    const auto region =
        sfg::lattice::place_dopants({lattice_constant, dope_radius}, concentration, {{"dopant", 1.0}}, ds.seed);
    const auto stats = sfg::lattice::neighbor_statistics(region, dope_shells);
    Table t{{"neighbors", "count", "empirical", "analytic", "sigma"}, {}};
    for (std::size_t k = 0; k < stats.histogram.size(); ++k)
      t.rows.push_back({k, stats.histogram[k], stats.empirical[k], stats.analytic[k], stats.sigma(k)});
    if (ds.format == Format::json) {
      Json out{{"seed", ds.seed},
               {"concentration", concentration},
               {"realized_concentration", region.concentration()},
               {"sites", region.site_count},
               {"dopants", region.placements.size()},
               {"counted_dopants", stats.counted_dopants},
               {"shell_sites", stats.shell_sites},
               {"bins", Json::parse(t.render(Format::json))}};
      emit(ds, out.dump(2) + "\n");
    } else {
      emit(ds, t.render(Format::csv));
    }
  });

  // --- emt -----------------------------------------------------------------------
  Common es;
  std::vector<std::string> emt_species;
  double binding = std::numeric_limits<double>::quiet_NaN();
  double exciton = std::numeric_limits<double>::quiet_NaN();
  double haynes = 0.1;
  double dielectric = 5.7;
  double central_cell = 0.0;
  auto* emt_cmd = app.add_subcommand("emt", "effective-mass donor parameters");
  add_common(emt_cmd, es, Format::csv);
  emt_cmd->add_option("--species", emt_species, "catalog species (default: all)");
  auto* binding_opt = emt_cmd->add_option("--binding", binding, "ionization energy R_eff, eV");
  auto* exciton_opt = emt_cmd->add_option("--exciton", exciton, "bound-exciton binding, eV (Haynes rule)");
  binding_opt->excludes(exciton_opt);
  emt_cmd->add_option("--haynes", haynes, "Haynes factor");
  emt_cmd->add_option("--dielectric", dielectric, "static dielectric constant");
  emt_cmd->add_option("--central-cell", central_cell, "non-Coulombic part of R_eff, eV");
  emt_cmd->callback([&] {
    std::vector<sfg::donor::DonorModel> models;
    if (binding_opt->count() > 0) {
      auto m = sfg::donor::model_from_ionization(binding, dielectric, central_cell);
      m.species_name = "custom";
      models.push_back(m);
    } else if (exciton_opt->count() > 0) {
      auto m = sfg::donor::model_from_exciton(exciton, haynes, dielectric, central_cell);
      m.species_name = "custom";
      models.push_back(m);
    } else {
      const auto cat = catalog();
      if (emt_species.empty())
        models = cat.species;
      else
        for (const auto& name : emt_species) models.push_back(cat.find(name));
    }
    Table t{{"species", "role", "binding_eV", "coulombic_eV", "dielectric", "mass_ratio", "a_star_angstrom",
             "orbital_radius_angstrom", "transition_meV"},
            {}};
    for (const auto& m : models)
      t.rows.push_back({m.species_name, sfg::donor::to_string(m.role), m.binding_energy, m.coulombic_binding(),
                        m.dielectric_constant, m.effective_mass_ratio(), m.effective_bohr_radius, m.orbital_radius(),
                        sfg::integrals::base_transition_energy(m)});
    emit(es, t.render(es.format));
  });

  // --- exchange / splitting curves ---------------------------------------------------
  struct CurveArgs {
    Common common;
    ScenarioSource source;
    std::string control;
    std::string partner;
    double r_min = std::numeric_limits<double>::quiet_NaN();
    double r_max = std::numeric_limits<double>::quiet_NaN();
    double r_step = std::numeric_limits<double>::quiet_NaN();
    int terms = 0;
  };
  auto add_curve_args = [&](CLI::App* cmd, CurveArgs& a, bool with_partner) {
    add_common(cmd, a.common, Format::csv);
    a.source.add(cmd);
    cmd->add_option("--control", a.control, "control species");
    if (with_partner) cmd->add_option("--qubit", a.partner, "qubit species");
    cmd->add_option("--r-min", a.r_min, "angstrom");
    cmd->add_option("--r-max", a.r_max, "angstrom");
    cmd->add_option("--r-step", a.r_step, "angstrom");
    cmd->add_option("--terms", a.terms, "Gaussians per orbital")->check(CLI::Range(3, 12));
  };
  // Resolves species and grid from a scenario's curve block, command-line overrides winning.
  auto resolve_curve = [&](const CurveArgs& a, sfg::harness::CurveSpec::Kind kind) {
    sfg::harness::Scenario s;
    sfg::harness::CurveSpec spec;
    spec.kind = kind;
    const auto cat = catalog();
    if (a.source.given()) {
      s = a.source.load(cat);
      if (s.curve) spec = *s.curve;
    }
    auto model = [&](const std::string& name) {
      for (const auto& sp : s.species)
        if (sp.model.species_name == name) return sp.model;
      return cat.find(name);
    };
    if (!a.control.empty()) spec.control = a.control;
    if (!a.partner.empty()) spec.partner = a.partner;
    if (spec.control.empty()) throw sfg::PreconditionError("cli", "no control species given");
    if (kind == sfg::harness::CurveSpec::Kind::exchange && spec.partner.empty())
      throw sfg::PreconditionError("cli", "no qubit species given");
    if (!std::isnan(a.r_min)) spec.r_min = a.r_min;
    if (!std::isnan(a.r_max)) spec.r_max = a.r_max;
    if (!std::isnan(a.r_step)) spec.r_step = a.r_step;
    sfg::integrals::CurveOptions options{s.exchange.gaussian_terms, s.exchange.p_axis, s.exchange.fixed_axis};
    if (a.terms > 0) options.gaussian_terms = a.terms;
    const auto control = model(spec.control);
    const auto partner = kind == sfg::harness::CurveSpec::Kind::exchange ? model(spec.partner) : control;
    return std::tuple{control, partner, spec.grid(), options};
  };

  auto* exchange_cmd = app.add_subcommand("exchange", "exchange splitting");
  exchange_cmd->require_subcommand(1);
  CurveArgs xa;
  auto* xcurve = exchange_cmd->add_subcommand("curve", "J(R) for ground and excited control");
  add_curve_args(xcurve, xa, true);
  xcurve->callback([&] {
    const auto [control, qubit, r, options] = resolve_curve(xa, sfg::harness::CurveSpec::Kind::exchange);
    const auto ground = sfg::integrals::exchange_curve(control, qubit, false, r, options);
    const auto excited = sfg::integrals::exchange_curve(control, qubit, true, r, options);
    Table t{{"R_angstrom", "J_ground_meV", "J_excited_meV"}, {}};
    for (std::size_t i = 0; i < r.size(); ++i)
      t.rows.push_back({r[i], ground[i].exchange_splitting, excited[i].exchange_splitting});
    emit(xa.common, t.render(xa.common.format));
  });

  auto* splitting_cmd = app.add_subcommand("splitting", "bonding/antibonding transition energies");
  splitting_cmd->require_subcommand(1);
  CurveArgs sa;
  auto* scurve = splitting_cmd->add_subcommand("curve", "transition energies of two excited controls vs R");
  add_curve_args(scurve, sa, false);
  scurve->callback([&] {
    const auto [control, unused, r, options] = resolve_curve(sa, sfg::harness::CurveSpec::Kind::splitting);
    (void)unused;
    const auto curve = sfg::integrals::transfer_splitting_curve(control, r, options);
    Table t{{"R_angstrom", "lower_meV", "upper_meV", "splitting_meV", "transfer_meV"}, {}};
    for (const auto& p : curve) t.rows.push_back({p.separation, p.lower, p.upper, p.splitting(), p.transfer});
    emit(sa.common, t.render(sa.common.format));
  });

  // --- gate ------------------------------------------------------------------------
  auto* gate_cmd = app.add_subcommand("gate", "three-spin SFG gate");
  gate_cmd->require_subcommand(1);
  Common gs;
  double j1 = 30.0;
  double j2 = 30.0;
  double tau_max = 0.0;
  double residual = 1e-6;
  auto* grun = gate_cmd->add_subcommand("run", "search the clean gate time of a control with two qubits");
  add_common(grun, gs, Format::json);
  grun->add_option("--j1", j1, "control-qubit 1 exchange, meV");
  grun->add_option("--j2", j2, "control-qubit 2 exchange, meV");
  grun->add_option("--tau-max", tau_max, "scan limit, ps (default 8 pi hbar / max J)");
  grun->add_option("--threshold", residual, "residual control entanglement, bits");
  grun->callback([&] {
    sfg::spins::SpinSystem system;
    const int c = system.add_spin("C", sfg::spins::SpinRole::control);
    const int q1 = system.add_spin("Q1", sfg::spins::SpinRole::qubit);
    const int q2 = system.add_spin("Q2", sfg::spins::SpinRole::qubit);
    system.set_coupling(c, q1, j1);
    system.set_coupling(c, q2, j2);
    sfg::spins::GateSearch search;
    search.tau_max = tau_max;
    search.residual_threshold = residual;
    std::string status = "clean";
    sfg::spins::GateReport report;
    try {
      report = sfg::spins::sfg_gate(system, c, search);
    } catch (const sfg::spins::NoCleanGateError& e) {
      status = "no_clean_gate";
      report = e.best();
    }
    Table t{{"status", "J1_meV", "J2_meV", "duration_ps", "residual_bits", "entangling_power", "symmetric_time_ps"},
            {{status, j1, j2, report.duration, report.control_residual_entanglement, report.entangling_power,
              sfg::spins::symmetric_gate_time(std::max(std::abs(j1), std::abs(j2)))}}};
    if (gs.format == Format::json) {
      Json out = Json::parse(t.render(Format::json)).front();
      Json u = Json::array();
      for (int i = 0; i < 4; ++i) {
        Json row = Json::array();
        for (int k = 0; k < 4; ++k)
          row.push_back(Json::array({report.qubit_unitary(i, k).real(), report.qubit_unitary(i, k).imag()}));
        u.push_back(row);
      }
      out["qubit_unitary"] = u;
      emit(gs, out.dump(2) + "\n");
    } else {
      emit(gs, t.render(Format::csv));
    }
    if (status != "clean") throw sfg::spins::NoCleanGateError("no clean gate in the scanned window", report);
  });

  // --- configure -------------------------------------------------------------------
  auto* configure_cmd = app.add_subcommand("configure", "simulated optically detected EPR configuration");
  configure_cmd->require_subcommand(1);
  Common cs;
  ScenarioSource csrc;
  auto* cscan = configure_cmd->add_subcommand("scan", "2D optical x EPR response map");
  add_common(cscan, cs, Format::csv);
  csrc.add(cscan);
  Common ci;
  ScenarioSource cisrc;
  auto* cinfer = configure_cmd->add_subcommand("infer", "control-qubit adjacency from the simulated scan");
  add_common(cinfer, ci, Format::json);
  cisrc.add(cinfer);

  // The scan stage works from a feasibility run so that line positions and
  // couplings are exactly those of the report.
  auto scan_inputs = [&](const Common& common, const ScenarioSource& src) {
    auto s = src.load(catalog());
    if (common.seed_given()) s.seed = common.seed;
    s.run_configure = true;
    const auto report = sfg::harness::run_feasibility(s);
    sfg::configure::ScanTruth truth;
    std::vector<std::string> qubit_labels;
    for (const auto& d : report.dopants)
      if (d.role == sfg::donor::Role::qubit) qubit_labels.push_back(d.label);
    for (const auto& t : report.transitions) truth.controls.push_back({t.gate_id, t.energy});
    const auto positions =
        sfg::configure::sample_epr_positions(qubit_labels.size(), s.epr, sfg::harness::derive_seed(s.seed, 2));
    for (std::size_t i = 0; i < qubit_labels.size(); ++i) truth.qubits.push_back({qubit_labels[i], positions[i]});
    truth.couplings = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(truth.controls.size()),
                                            static_cast<Eigen::Index>(truth.qubits.size()));
    for (const auto& row : report.couplings) {
      Eigen::Index c = 0;
      Eigen::Index q = 0;
      while (truth.controls[static_cast<std::size_t>(c)].label != row.control) ++c;
      while (truth.qubits[static_cast<std::size_t>(q)].label != row.qubit) ++q;
      truth.couplings(c, q) = row.exchange;
    }
    truth.homogeneous_width = report.transitions.empty() ? s.spectral.homogeneous_width : report.transitions[0].width;
    return std::tuple{s, report, truth};
  };

  cscan->callback([&] {
    const auto [s, report, truth] = scan_inputs(cs, csrc);
    const auto scan = sfg::configure::simulate_scan(truth, s.epr);
    if (cs.format == Format::csv) {
      std::ostringstream out;
      sfg::configure::write_csv(out, scan);
      emit(cs, out.str());
      return;
    }
    Json out{{"optical_axis_meV", scan.optical_axis}, {"epr_axis_meV", scan.epr_axis}};
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < scan.response.rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(scan.response.cols()));
      for (Eigen::Index j = 0; j < scan.response.cols(); ++j) row[static_cast<std::size_t>(j)] = scan.response(i, j);
      rows.push_back(row);
    }
    out["response"] = rows;
    emit(cs, out.dump() + "\n");
  });

  cinfer->callback([&] {
    const auto [s, report, truth] = scan_inputs(ci, cisrc);
    (void)truth;
    const auto& adjacency = report.adjacency;
    if (ci.format == Format::json) {
      Json out{{"recovered", adjacency.recovered}};
      Json inferred = Json::array();
      for (const auto& h : adjacency.inferred.controls)
        inferred.push_back({{"label", h.label},
                            {"optical_energy_meV", h.optical_energy},
                            {"qubits", h.qubits},
                            {"J_meV", h.couplings},
                            {"ambiguous", h.ambiguous}});
      out["inferred"] = inferred;
      Json truth_json = Json::object();
      for (const auto& [label, qs] : adjacency.truth) truth_json[label] = qs;
      out["truth"] = truth_json;
      emit(ci, out.dump(2) + "\n");
    } else {
      Table t{{"control", "optical_energy_meV", "qubit", "J_meV", "ambiguous"}, {}};
      for (const auto& h : adjacency.inferred.controls)
        for (std::size_t k = 0; k < h.qubits.size(); ++k)
          t.rows.push_back({h.label, h.optical_energy, h.qubits[k], h.couplings[k], h.ambiguous ? 1 : 0});
      emit(ci, t.render(Format::csv));
    }
  });

  // --- feasibility -------------------------------------------------------------------
  auto* feas_cmd = app.add_subcommand("feasibility", "end-to-end feasibility pipeline");
  feas_cmd->require_subcommand(1);
  Common fr;
  ScenarioSource fsrc;
  std::string timestamp;
  std::string save_scenario;
  auto* frun = feas_cmd->add_subcommand("run", "run one scenario");
  add_common(frun, fr, Format::json);
  fsrc.add(frun);
  frun->add_option("--timestamp", timestamp, "fixed generated_at value (default: current UTC time)");
  frun->add_option("--save-scenario", save_scenario, "also write the resolved scenario JSON here");
  frun->callback([&] {
    auto s = fsrc.load(catalog());
    if (fr.seed_given()) s.seed = fr.seed;
    if (!save_scenario.empty()) {
      std::ofstream out(save_scenario);
      if (!out) throw sfg::PreconditionError("io", "cannot write " + save_scenario);
      out << sfg::harness::dump_scenario(s);
    }
    const auto report = sfg::harness::run_feasibility(s);
    if (fr.format == Format::json) {
      emit(fr, sfg::harness::report_json(report, timestamp.empty() ? sfg::harness::utc_timestamp() : timestamp));
      return;
    }
    Table t{{"control", "qubit", "separation_angstrom", "overlap", "J_excited_meV"}, {}};
    for (const auto& c : report.couplings)
      t.rows.push_back({c.control, c.qubit, c.separation, c.overlap ? Json(*c.overlap) : Json(""), c.exchange});
    emit(fr, t.render(Format::csv));
  });

  Common fp;
  ScenarioSource psrc;
  int n_patches = 20;
  auto* fpatch = feas_cmd->add_subcommand("patches", "usable-gate distribution over random patches");
  add_common(fpatch, fp, Format::json);
  psrc.add(fpatch);
  fpatch->add_option("--patches", n_patches, "number of patches")->check(CLI::PositiveNumber);
  fpatch->add_option("--timestamp", timestamp, "fixed generated_at value");
  fpatch->callback([&] {
    const auto s = psrc.given() ? psrc.load(catalog()) : sfg::harness::preset("shen-nv", catalog());
    const auto stats = sfg::harness::patch_statistics(s, n_patches, fp.seed);
    if (fp.format == Format::json) {
      emit(fp, sfg::harness::patch_statistics_json(stats, s,
                                                   timestamp.empty() ? sfg::harness::utc_timestamp() : timestamp));
      return;
    }
    Table t{{"patch", "dopants", "resolvable_gates", "usable_gates"}, {}};
    for (std::size_t i = 0; i < stats.usable_gates.size(); ++i)
      t.rows.push_back({i, stats.dopant_counts[i], stats.resolvable_gates[i], stats.usable_gates[i]});
    emit(fp, t.render(Format::csv));
  });

  // --- presets -----------------------------------------------------------------------
  auto* presets_cmd = app.add_subcommand("presets", "built-in scenarios and donor species");
  presets_cmd->require_subcommand(1);
  Common pl;
  auto* plist = presets_cmd->add_subcommand("list", "list scenario presets and catalog species");
  add_common(plist, pl, Format::csv);
  plist->callback([&] {
    const auto cat = catalog();
    Table t{{"kind", "name", "description"}, {}};
    for (const auto& name : sfg::harness::preset_names())
      t.rows.push_back({"scenario", name, sfg::harness::preset_description(name)});
    for (const auto& m : cat.species)
      t.rows.push_back({"species", m.species_name,
                        sfg::donor::to_string(m.role) + " R_eff " + number(m.binding_energy) + " eV, a* " +
                            number(m.effective_bohr_radius) + " A, scale " + number(m.radius_scale_factor)});
    emit(pl, t.render(pl.format));
  });
  Common pd;
  std::string dump_name;
  auto* pdump = presets_cmd->add_subcommand("dump", "write a preset as a scenario file");
  add_common(pdump, pd, Format::json);
  pdump->add_option("name", dump_name, "preset name")->required();
  pdump->callback([&] {
    auto s = sfg::harness::preset(dump_name, catalog());
    if (pd.seed_given()) s.seed = pd.seed;
    emit(pd, sfg::harness::dump_scenario(s));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const sfg::Error& e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
