#include "sfg/donor_json.hpp"
#include "sfg/error.hpp"
#include "sfg/harness.hpp"
#include "sfg/units.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace sfg::harness {

namespace {

using json::Json;

std::string axis_name(integrals::AxisMode mode) {
  return mode == integrals::AxisMode::inter_center ? "inter_center" : "fixed";
}

Json vector_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

Eigen::Vector3d read_vector(const json::Document& doc, const Json& value, const std::string& ptr) {
  if (!value.is_array() || value.size() < 2 || value.size() > 3) doc.fail(ptr, "expected [x, y] or [x, y, z] in angstrom");
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) doc.fail(ptr + "/" + std::to_string(i), "expected a number");
    v[static_cast<Eigen::Index>(i)] = value[i].get<double>();
  }
  return v;
}

std::uint64_t read_seed(const json::Document& doc, const Json& object, const std::string& ptr, const std::string& key,
                        std::uint64_t fallback) {
  if (!object.contains(key)) return fallback;
  const auto& v = object.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  doc.fail(ptr + "/" + key, "expected a non-negative integer seed");
}

const std::vector<std::string> kModelFields{"species_name",        "role", "binding_energy", "central_cell_split",
                                            "dielectric_constant", "effective_bohr_radius", "radius_scale_factor",
                                            "spin",                "t1",   "t2"};

SpeciesEntry read_species(const json::Document& doc, const Json& o, const std::string& ptr,
                          const donor::PresetCatalog& catalog) {
  if (!o.is_object()) doc.fail(ptr, "expected an object");
  if (!o.contains("preset")) return {std::nullopt, donor::model_from_json(doc, o, ptr)};
  // Preset reference with optional field overrides.
  const auto name = doc.text(o, ptr, "preset");
  donor::DonorModel base;
  try {
    base = catalog.find(name);
  } catch (const Error& e) {
    doc.fail(ptr + "/preset", e.what());
  }
  Json merged = donor::to_json(base);
  for (const auto& [key, value] : o.items()) {
    if (key == "preset") continue;
    if (std::find(kModelFields.begin(), kModelFields.end(), key) == kModelFields.end())
      doc.fail(ptr + "/" + json::escape_pointer_token(key), "unknown key '" + key + "'");
    merged[key] = value;
  }
  // Keep a* consistent when EMT inputs are overridden but a* is not.
  if (!o.contains("effective_bohr_radius") &&
      (o.contains("binding_energy") || o.contains("central_cell_split") || o.contains("dielectric_constant")))
    merged.erase("effective_bohr_radius");
  const json::Document merged_doc(merged.dump(), doc.stage());
  try {
    return {name, donor::model_from_json(merged_doc, merged_doc.root(), "")};
  } catch (const ScenarioError& e) {
    doc.fail(ptr, e.what());
  }
}

Json species_json(const SpeciesEntry& entry, const donor::PresetCatalog* catalog) {
  if (!entry.preset) return donor::to_json(entry.model);
  Json out;
  out["preset"] = *entry.preset;
  const Json full = donor::to_json(entry.model);
  Json base;
  if (catalog != nullptr) {
    try {
      base = donor::to_json(catalog->find(*entry.preset));
    } catch (const Error&) {
    }
  }
  for (const auto& [key, value] : full.items())
    if (!base.contains(key) || base.at(key) != value) out[key] = value;
  return out;
}

}  // namespace

std::vector<double> CurveSpec::grid() const {
  if (!(r_min > 0.0) || !(r_max > r_min) || !(r_step > 0.0))
    throw PreconditionError("harness", "curve grid needs 0 < r_min < r_max and r_step > 0");
  std::vector<double> g;
  const auto n = static_cast<int>(std::floor((r_max - r_min) / r_step + 1e-9));
  for (int i = 0; i <= n; ++i) g.push_back(r_min + r_step * i);
  return g;
}

const donor::DonorModel& Scenario::species_model(const std::string& name) const {
  for (const auto& s : species)
    if (s.model.species_name == name) return s.model;
  throw DependencyError("harness", "scenario has no species '" + name + "'");
}

void validate(const Scenario& s) {
  auto fail = [](const std::string& what) { throw ScenarioError(what, 0); };
  if (s.schema_version != kSchemaVersion) fail("unsupported schema_version " + std::to_string(s.schema_version));
  std::set<std::string> names;
  for (const auto& sp : s.species) {
    if (!names.insert(sp.model.species_name).second) fail("duplicate species '" + sp.model.species_name + "'");
    donor::validate(sp.model);
  }
  std::set<std::string> labels;
  for (const auto& p : s.placements) {
    if (!names.contains(p.species)) fail("placement " + p.label + " references undeclared species '" + p.species + "'");
    if (!labels.insert(p.label).second) fail("duplicate placement label '" + p.label + "'");
  }
  if (s.random) {
    if (!s.placements.empty()) fail("explicit placements and random_placement are mutually exclusive");
    for (const auto& [name, fraction] : s.random->mix)
      if (!names.contains(name)) fail("random mix references undeclared species '" + name + "'");
  }
  if (s.curve) {
    if (!names.contains(s.curve->control)) fail("curve control '" + s.curve->control + "' is not declared");
    if (s.curve->kind == CurveSpec::Kind::exchange && !names.contains(s.curve->partner))
      fail("curve partner '" + s.curve->partner + "' is not declared");
  }
  if (!(s.excitation_energy > 0.0)) fail("excitation_energy must be positive");
  if (!(s.thresholds.detection > 0.0)) fail("detection threshold must be positive");
  if (!(s.thresholds.resolution_k >= 1.0)) fail("resolution_k must be >= 1");
  if (s.exchange.gaussian_terms < 3) fail("gaussian_terms must be >= 3");
}

Scenario parse_scenario(const std::string& text, const donor::PresetCatalog& catalog) {
  const json::Document doc(text, "scenario");
  const auto& root = doc.root();
  doc.check_keys(root, "",
                 {"schema_version", "name", "notes", "lattice", "species", "placements", "random_placement",
                  "spectral", "epr", "thresholds", "targets", "seed", "excitation_energy", "exchange", "pipeline",
                  "curve"},
                 {"schema_version", "species"});
  Scenario s;
  s.schema_version = static_cast<int>(doc.integer(root, "", "schema_version"));
  if (s.schema_version != kSchemaVersion)
    doc.fail("/schema_version", "unsupported schema_version " + std::to_string(s.schema_version) + " (expected " +
                                    std::to_string(kSchemaVersion) + ")");
  s.name = doc.text_or(root, "", "name", "");
  if (root.contains("notes")) {
    const auto& notes = root.at("notes");
    if (!notes.is_array()) doc.fail("/notes", "expected an array of strings");
    for (std::size_t i = 0; i < notes.size(); ++i) {
      if (!notes[i].is_string()) doc.fail("/notes/" + std::to_string(i), "expected a string");
      s.notes.push_back(notes[i].get<std::string>());
    }
  }

  if (root.contains("lattice")) {
    const auto& l = root.at("lattice");
    doc.check_keys(l, "/lattice", {"lattice_constant", "bounding_radius", "origin"});
    s.lattice.lattice_constant = doc.number_or(l, "/lattice", "lattice_constant", 3.567);
    s.lattice.bounding_radius = doc.number_or(l, "/lattice", "bounding_radius", 0.0);
    if (doc.text_or(l, "/lattice", "origin", "atom_centered") != "atom_centered")
      doc.fail("/lattice/origin", "only atom_centered is supported");
    try {
      lattice::detail::validate(s.lattice);
    } catch (const Error& e) {
      doc.fail("/lattice", e.what());
    }
  }

  const auto& species = root.at("species");
  if (!species.is_array()) doc.fail("/species", "expected an array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < species.size(); ++i) {
    const std::string ptr = "/species/" + std::to_string(i);
    auto entry = read_species(doc, species[i], ptr, catalog);
    if (!names.insert(entry.model.species_name).second)
      doc.fail(ptr, "duplicate species '" + entry.model.species_name + "'");
    s.species.push_back(std::move(entry));
  }

  if (root.contains("placements") && root.contains("random_placement"))
    doc.fail("/random_placement", "explicit placements and random_placement are mutually exclusive");
  if (root.contains("placements")) {
    const auto& ps = root.at("placements");
    if (!ps.is_array()) doc.fail("/placements", "expected an array");
    std::set<std::string> labels;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string ptr = "/placements/" + std::to_string(i);
      doc.check_keys(ps[i], ptr, {"label", "species", "position"}, {"label", "species", "position"});
      ExplicitPlacement p;
      p.label = doc.text(ps[i], ptr, "label");
      p.species = doc.text(ps[i], ptr, "species");
      if (!names.contains(p.species)) doc.fail(ptr + "/species", "undeclared species '" + p.species + "'");
      if (!labels.insert(p.label).second) doc.fail(ptr + "/label", "duplicate label '" + p.label + "'");
      p.position = read_vector(doc, ps[i].at("position"), ptr + "/position");
      s.placements.push_back(std::move(p));
    }
  }
  if (root.contains("random_placement")) {
    const auto& r = root.at("random_placement");
    const std::string ptr = "/random_placement";
    doc.check_keys(r, ptr, {"concentration", "mix", "seed"}, {"concentration", "mix"});
    RandomPlacement rp;
    rp.concentration = doc.number(r, ptr, "concentration");
    if (!(rp.concentration > 0.0 && rp.concentration < 1.0)) doc.fail(ptr + "/concentration", "must lie in (0, 1)");
    const auto& mix = r.at("mix");
    if (!mix.is_object() || mix.empty()) doc.fail(ptr + "/mix", "expected a non-empty object of species fractions");
    double total = 0.0;
    for (const auto& [name, fraction] : mix.items()) {
      const std::string fptr = ptr + "/mix/" + json::escape_pointer_token(name);
      if (!names.contains(name)) doc.fail(fptr, "undeclared species '" + name + "'");
      if (!fraction.is_number() || fraction.get<double>() < 0.0) doc.fail(fptr, "expected a non-negative fraction");
      rp.mix.emplace_back(name, fraction.get<double>());
      total += fraction.get<double>();
    }
    if (std::abs(total - 1.0) > 1e-9) doc.fail(ptr + "/mix", "fractions must sum to 1");
    rp.seed = read_seed(doc, r, ptr, "seed", 0);
    s.random = rp;
  }

  s.spectral.base_transition_energy = 0.0;
  if (root.contains("spectral")) {
    const auto& sp = root.at("spectral");
    const std::string ptr = "/spectral";
    doc.check_keys(sp, ptr, {"base_transition_energy", "homogeneous_width", "disorder"});
    s.spectral.base_transition_energy = doc.number_or(sp, ptr, "base_transition_energy", 0.0);
    s.spectral.homogeneous_width = doc.number_or(sp, ptr, "homogeneous_width", s.spectral.homogeneous_width);
    if (!(s.spectral.homogeneous_width > 0.0)) doc.fail(ptr + "/homogeneous_width", "must be positive");
    if (sp.contains("disorder")) {
      const auto& d = sp.at("disorder");
      if (!d.is_array()) doc.fail(ptr + "/disorder", "expected an array");
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::string dptr = ptr + "/disorder/" + std::to_string(i);
        doc.check_keys(d[i], dptr, {"name", "width"}, {"name", "width"});
        spectra::DisorderComponent c{doc.text(d[i], dptr, "name"), doc.number(d[i], dptr, "width")};
        if (!(c.width >= 0.0)) doc.fail(dptr + "/width", "must be non-negative");
        s.spectral.disorder.push_back(std::move(c));
      }
    }
  }

  if (root.contains("epr")) {
    const auto& e = root.at("epr");
    const std::string ptr = "/epr";
    doc.check_keys(e, ptr, {"linewidth", "center", "offset_spread", "min_separation"});
    s.epr.linewidth = doc.number_or(e, ptr, "linewidth", s.epr.linewidth);
    s.epr.center = doc.number_or(e, ptr, "center", s.epr.center);
    s.epr.offset_spread = doc.number_or(e, ptr, "offset_spread", s.epr.offset_spread);
    s.epr.min_separation = doc.number_or(e, ptr, "min_separation", s.epr.min_separation);
    if (!(s.epr.linewidth > 0.0)) doc.fail(ptr + "/linewidth", "must be positive");
  }

  if (root.contains("thresholds")) {
    const auto& t = root.at("thresholds");
    const std::string ptr = "/thresholds";
    doc.check_keys(t, ptr, {"detection", "resolution_k", "disentangle_bits"});
    s.thresholds.detection = doc.number_or(t, ptr, "detection", s.thresholds.detection);
    s.thresholds.resolution_k = doc.number_or(t, ptr, "resolution_k", s.thresholds.resolution_k);
    s.thresholds.disentangle_bits = doc.number_or(t, ptr, "disentangle_bits", s.thresholds.disentangle_bits);
    if (!(s.thresholds.detection > 0.0)) doc.fail(ptr + "/detection", "must be positive");
    if (!(s.thresholds.resolution_k >= 1.0)) doc.fail(ptr + "/resolution_k", "must be >= 1");
  }
  s.spectral.resolution_factor = s.thresholds.resolution_k;

  if (root.contains("targets")) {
    const auto& t = root.at("targets");
    doc.check_keys(t, "/targets", {"n_qubits", "n_gates"});
    s.targets.n_qubits = static_cast<int>(doc.integer_or(t, "/targets", "n_qubits", 0));
    s.targets.n_gates = static_cast<int>(doc.integer_or(t, "/targets", "n_gates", 0));
  }

  s.seed = read_seed(doc, root, "", "seed", 0);
  s.excitation_energy = doc.number_or(root, "", "excitation_energy", 600.0);
  if (!(s.excitation_energy > 0.0)) doc.fail("/excitation_energy", "must be positive");

  if (root.contains("exchange")) {
    const auto& x = root.at("exchange");
    const std::string ptr = "/exchange";
    doc.check_keys(x, ptr, {"gaussian_terms", "p_axis", "fixed_axis", "cutoff"});
    s.exchange.gaussian_terms = static_cast<int>(doc.integer_or(x, ptr, "gaussian_terms", 6));
    if (s.exchange.gaussian_terms < 3) doc.fail(ptr + "/gaussian_terms", "must be >= 3");
    const auto axis = doc.text_or(x, ptr, "p_axis", "inter_center");
    if (axis == "inter_center")
      s.exchange.p_axis = integrals::AxisMode::inter_center;
    else if (axis == "fixed")
      s.exchange.p_axis = integrals::AxisMode::fixed;
    else
      doc.fail(ptr + "/p_axis", "expected inter_center or fixed");
    if (x.contains("fixed_axis")) {
      s.exchange.fixed_axis = read_vector(doc, x.at("fixed_axis"), ptr + "/fixed_axis");
      if (!(s.exchange.fixed_axis.norm() > 0.0)) doc.fail(ptr + "/fixed_axis", "must be non-zero");
    }
    s.exchange.cutoff = doc.number_or(x, ptr, "cutoff", s.exchange.cutoff);
    if (!(s.exchange.cutoff > 0.0)) doc.fail(ptr + "/cutoff", "must be positive");
  }

  if (root.contains("pipeline")) {
    const auto& p = root.at("pipeline");
    doc.check_keys(p, "/pipeline", {"configure"});
    s.run_configure = doc.boolean_or(p, "/pipeline", "configure", true);
  }

  if (root.contains("curve")) {
    const auto& c = root.at("curve");
    const std::string ptr = "/curve";
    doc.check_keys(c, ptr, {"kind", "control", "partner", "r_min", "r_max", "r_step"}, {"kind", "control"});
    CurveSpec curve;
    const auto kind = doc.text(c, ptr, "kind");
    if (kind == "exchange")
      curve.kind = CurveSpec::Kind::exchange;
    else if (kind == "splitting")
      curve.kind = CurveSpec::Kind::splitting;
    else
      doc.fail(ptr + "/kind", "expected exchange or splitting");
    curve.control = doc.text(c, ptr, "control");
    if (!names.contains(curve.control)) doc.fail(ptr + "/control", "undeclared species '" + curve.control + "'");
    if (curve.kind == CurveSpec::Kind::exchange) {
      curve.partner = doc.text(c, ptr, "partner");
      if (!names.contains(curve.partner)) doc.fail(ptr + "/partner", "undeclared species '" + curve.partner + "'");
    } else if (c.contains("partner")) {
      doc.fail(ptr + "/partner", "splitting curves take no partner");
    }
    curve.r_min = doc.number_or(c, ptr, "r_min", curve.r_min);
    curve.r_max = doc.number_or(c, ptr, "r_max", curve.r_max);
    curve.r_step = doc.number_or(c, ptr, "r_step", curve.r_step);
    if (!(curve.r_min > 0.0) || !(curve.r_max > curve.r_min) || !(curve.r_step > 0.0))
      doc.fail(ptr, "grid needs 0 < r_min < r_max and r_step > 0");
    s.curve = curve;
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path, const donor::PresetCatalog& catalog) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string(), 0);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), catalog);
}

namespace {

Json scenario_json_with(const Scenario& s, const donor::PresetCatalog* catalog) {
  Json root;
  root["schema_version"] = s.schema_version;
  root["name"] = s.name;
  if (!s.notes.empty()) root["notes"] = s.notes;
  root["lattice"] = {{"lattice_constant", s.lattice.lattice_constant},
                     {"bounding_radius", s.lattice.bounding_radius},
                     {"origin", "atom_centered"}};
  root["species"] = Json::array();
  for (const auto& sp : s.species) root["species"].push_back(species_json(sp, catalog));
  if (s.random) {
    Json mix = Json::object();
    for (const auto& [name, fraction] : s.random->mix) mix[name] = fraction;
    root["random_placement"] = {{"concentration", s.random->concentration}, {"mix", mix}, {"seed", s.random->seed}};
  } else {
    root["placements"] = Json::array();
    for (const auto& p : s.placements)
      root["placements"].push_back({{"label", p.label}, {"species", p.species}, {"position", vector_json(p.position)}});
  }
  Json spectral;
  if (s.spectral.base_transition_energy > 0.0) spectral["base_transition_energy"] = s.spectral.base_transition_energy;
  spectral["homogeneous_width"] = s.spectral.homogeneous_width;
  spectral["disorder"] = Json::array();
  for (const auto& c : s.spectral.disorder) spectral["disorder"].push_back({{"name", c.name}, {"width", c.width}});
  root["spectral"] = spectral;
  root["epr"] = {{"linewidth", s.epr.linewidth},
                 {"center", s.epr.center},
                 {"offset_spread", s.epr.offset_spread},
                 {"min_separation", s.epr.min_separation}};
  root["thresholds"] = {{"detection", s.thresholds.detection},
                        {"resolution_k", s.thresholds.resolution_k},
                        {"disentangle_bits", s.thresholds.disentangle_bits}};
  root["targets"] = {{"n_qubits", s.targets.n_qubits}, {"n_gates", s.targets.n_gates}};
  root["seed"] = s.seed;
  root["excitation_energy"] = s.excitation_energy;
  Json exchange{{"gaussian_terms", s.exchange.gaussian_terms}, {"p_axis", axis_name(s.exchange.p_axis)}};
  if (s.exchange.p_axis == integrals::AxisMode::fixed) exchange["fixed_axis"] = vector_json(s.exchange.fixed_axis);
  exchange["cutoff"] = s.exchange.cutoff;
  root["exchange"] = exchange;
  root["pipeline"] = {{"configure", s.run_configure}};
  if (s.curve) {
    Json c{{"kind", s.curve->kind == CurveSpec::Kind::exchange ? "exchange" : "splitting"},
           {"control", s.curve->control}};
    if (s.curve->kind == CurveSpec::Kind::exchange) c["partner"] = s.curve->partner;
    c["r_min"] = s.curve->r_min;
    c["r_max"] = s.curve->r_max;
    c["r_step"] = s.curve->r_step;
    root["curve"] = c;
  }
  return root;
}

}  // namespace

json::Json scenario_to_json(const Scenario& scenario) {
  // Preset references are written with only the fields that differ from the
  // shipped catalog, when it can be loaded.
  std::optional<donor::PresetCatalog> catalog;
  try {
    catalog = donor::load_presets();
  } catch (const Error&) {
  }
  return scenario_json_with(scenario, catalog ? &*catalog : nullptr);
}

std::string dump_scenario(const Scenario& scenario) { return scenario_to_json(scenario).dump(2) + "\n"; }

// --- presets ------------------------------------------------------------------

spectra::SpectralModel shen_nv_spectral(double base) {
  constexpr double kZeroPhononNm = 637.0;
  spectra::SpectralModel m;
  m.base_transition_energy = base;
  m.homogeneous_width = units::mev_from_wavelength_width(0.36, kZeroPhononNm);
  m.disorder.push_back({"inhomogeneous", units::mev_from_wavelength_width(5.0, kZeroPhononNm)});
  m.resolution_factor = 1.5;
  return m;
}

std::vector<std::string> preset_names() { return {"table1", "fig2a", "fig2b", "fig3", "shen-nv"}; }

std::string preset_description(const std::string& name) {
  if (name == "table1") return "two controls at (-a,0), (a,0) and three qubits, a = 12 A, d = 9 A";
  if (name == "fig2a") return "exchange vs separation, 0.6 eV control with a half-radius qubit";
  if (name == "fig2b") return "exchange vs separation, 0.4 eV Coulombic control with a half-radius qubit";
  if (name == "fig3") return "bonding/antibonding transition energies of two 0.6 eV controls";
  if (name == "shen-nv") return "random P/N patch, 0.36 nm homogeneous and 5 nm inhomogeneous widths at 637 nm";
  throw ScenarioError("unknown preset '" + name + "'", 0);
}

Scenario preset(const std::string& name, const donor::PresetCatalog& catalog) {
  Scenario s;
  s.name = name;
  auto add = [&](const std::string& preset_name) { s.species.push_back({preset_name, catalog.find(preset_name)}); };
  const double dh = shen_nv_spectral(0.0).homogeneous_width;

  if (name == "table1") {
    add("P-control");
    add("N-qubit");
    const double a = 12.0;
    const double d = 9.0;
    s.placements = {{"C1", "P-control", {-a, 0.0, 0.0}},
                    {"C2", "P-control", {a, 0.0, 0.0}},
                    {"Q1", "N-qubit", {-a - d, d / 2.0, 0.0}},
                    {"Q2", "N-qubit", {-0.1 * a, d, 0.0}},
                    {"Q3", "N-qubit", {a, -d, 0.0}}};
    s.notes = {"a = 12 A gives the control-qubit separations 9, 10.1, 14.1, 16, 25.6, 33.3 A; "
               "a = 10 A, also quoted for this layout, does not.",
               "No random spectral disorder: line positions come from base energy and control-control transfer."};
    s.spectral.base_transition_energy = 0.0;
    s.spectral.homogeneous_width = dh;
    s.targets = {3, 2};
    s.seed = 1;
  } else if (name == "fig2a" || name == "fig2b") {
    if (name == "fig2a") {
      add("P-control");
      add("N-qubit");
      s.curve = CurveSpec{CurveSpec::Kind::exchange, "P-control", "N-qubit", 4.0, 30.0, 0.5};
    } else {
      add("P-control-soft");
      auto soft_qubit = catalog.find("P-control-soft");
      soft_qubit.species_name = "soft-qubit";
      soft_qubit.role = donor::Role::qubit;
      soft_qubit.radius_scale_factor = 0.5;
      s.species.push_back({std::nullopt, soft_qubit});
      s.curve = CurveSpec{CurveSpec::Kind::exchange, "P-control-soft", "soft-qubit", 4.0, 30.0, 0.5};
    }
    s.spectral.homogeneous_width = dh;
  } else if (name == "fig3") {
    add("P-control");
    s.curve = CurveSpec{CurveSpec::Kind::splitting, "P-control", "", 6.0, 30.0, 0.5};
    s.spectral.homogeneous_width = dh;
  } else if (name == "shen-nv") {
    add("P-control");
    add("N-qubit");
    s.lattice.bounding_radius = 66.0;
    s.random = RandomPlacement{7.0e-4, {{"P-control", 0.5}, {"N-qubit", 0.5}}, 11};
    s.spectral = shen_nv_spectral(0.0);
    s.spectral.base_transition_energy = 0.0;
    s.targets = {0, 10};
    s.seed = 2009;
    s.run_configure = false;
    s.notes = {"~150 dopants within 66 A at ~2 nm mean spacing; widths converted at the 637 nm zero-phonon line."};
  } else {
    throw ScenarioError("unknown preset '" + name + "'", 0);
  }
  s.spectral.resolution_factor = s.thresholds.resolution_k;
  validate(s);
  return s;
}

}  // namespace sfg::harness
