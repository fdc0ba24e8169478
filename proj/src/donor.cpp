#include "sfg/donor.hpp"

#include "sfg/donor_json.hpp"
#include "sfg/error.hpp"
#include "sfg/units.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef SFG_SOURCE_DATA_DIR
#define SFG_SOURCE_DATA_DIR "data"
#endif

namespace sfg::donor {

std::string to_string(Role role) { return role == Role::qubit ? "qubit" : "control"; }

Role role_from_string(const std::string& text) {
  if (text == "qubit") return Role::qubit;
  if (text == "control") return Role::control;
  throw InvalidModelError("unknown role '" + text + "' (expected qubit or control)");
}

double DonorModel::effective_mass_ratio() const {
  return dielectric_constant * dielectric_constant * coulombic_binding() / units::kRydbergEv;
}

void validate(const DonorModel& m) {
  auto bad = [&](const std::string& what) { throw InvalidModelError(m.species_name + ": " + what); };
  if (!(m.binding_energy > 0.0)) bad("binding energy must be positive");
  if (!(m.dielectric_constant > 1.0)) bad("dielectric constant must exceed 1");
  if (!(m.central_cell_split >= 0.0 && m.central_cell_split < m.binding_energy))
    bad("central-cell split must lie in [0, R_eff)");
  if (!(m.effective_bohr_radius > 0.0)) bad("effective Bohr radius must be positive");
  if (!(m.radius_scale_factor > 0.0 && m.radius_scale_factor <= 1.0))
    bad("radius scale factor must lie in (0, 1]");
  if (!(m.spin > 0.0) || std::abs(2.0 * m.spin - std::round(2.0 * m.spin)) > 1e-12)
    bad("spin must be a positive half-integer");
  if (m.t1 < 0.0 || m.t2 < 0.0) bad("relaxation times must be non-negative");
}

DonorModel model_from_ionization(double binding_ev, double dielectric, double central_cell_split_ev) {
  if (!(binding_ev > 0.0)) throw InvalidModelError("binding energy must be positive");
  if (!(dielectric > 1.0)) throw InvalidModelError("dielectric constant must exceed 1");
  if (!(central_cell_split_ev >= 0.0)) throw InvalidModelError("central-cell split must be non-negative");
  const double coulombic = binding_ev - central_cell_split_ev;
  if (!(coulombic > 0.0)) throw InvalidModelError("Coulombic part of the binding must be positive");

  DonorModel m;
  m.binding_energy = binding_ev;
  m.central_cell_split = central_cell_split_ev;
  m.dielectric_constant = dielectric;
  m.effective_bohr_radius = units::kBohrAngstrom * (units::kRydbergEv / dielectric) / coulombic;
  return m;
}

DonorModel model_from_exciton(double exciton_binding_ev, double haynes_factor, double dielectric,
                              double central_cell_split_ev) {
  if (!(exciton_binding_ev > 0.0)) throw InvalidModelError("exciton binding must be positive");
  if (!(haynes_factor > 0.0 && haynes_factor < 1.0))
    throw InvalidModelError("Haynes factor must lie in (0, 1)");
  return model_from_ionization(exciton_binding_ev / haynes_factor, dielectric, central_cell_split_ev);
}

ZeemanCheck zeeman_check(double g, double field_tesla, double temperature_kelvin) {
  if (!(temperature_kelvin > 0.0))
    throw PreconditionError("donor-model", "temperature must be positive");
  ZeemanCheck z;
  z.g_factor = g;
  z.field = field_tesla;
  z.temperature = temperature_kelvin;
  z.ratio = g * units::kBohrMagnetonMevPerTesla * field_tesla /
            (units::kBoltzmannMevPerKelvin * temperature_kelvin);
  z.polarization = std::tanh(z.ratio / 2.0);
  return z;
}

// --- JSON -------------------------------------------------------------------

json::Json to_json(const DonorModel& m) {
  json::Json j;
  j["species_name"] = m.species_name;
  j["role"] = to_string(m.role);
  j["binding_energy"] = m.binding_energy;
  j["central_cell_split"] = m.central_cell_split;
  j["dielectric_constant"] = m.dielectric_constant;
  j["effective_bohr_radius"] = m.effective_bohr_radius;
  j["radius_scale_factor"] = m.radius_scale_factor;
  j["spin"] = m.spin;
  j["t1"] = m.t1;
  j["t2"] = m.t2;
  return j;
}

DonorModel model_from_json(const json::Document& doc, const json::Json& o, const std::string& ptr) {
  doc.check_keys(o, ptr,
                 {"species_name", "role", "binding_energy", "central_cell_split", "dielectric_constant",
                  "effective_bohr_radius", "radius_scale_factor", "spin", "t1", "t2"},
                 {"species_name", "role", "binding_energy", "dielectric_constant"});
  try {
    auto m = model_from_ionization(doc.number(o, ptr, "binding_energy"), doc.number(o, ptr, "dielectric_constant"),
                                   doc.number_or(o, ptr, "central_cell_split", 0.0));
    m.species_name = doc.text(o, ptr, "species_name");
    m.role = role_from_string(doc.text(o, ptr, "role"));
    m.effective_bohr_radius = doc.number_or(o, ptr, "effective_bohr_radius", m.effective_bohr_radius);
    m.radius_scale_factor = doc.number_or(o, ptr, "radius_scale_factor", 1.0);
    m.spin = doc.number_or(o, ptr, "spin", 0.5);
    m.t1 = doc.number_or(o, ptr, "t1", 0.0);
    m.t2 = doc.number_or(o, ptr, "t2", 0.0);
    validate(m);
    return m;
  } catch (const InvalidModelError& e) {
    doc.fail(ptr, e.what());
  }
}

const DonorModel& PresetCatalog::find(const std::string& name) const {
  for (const auto& m : species)
    if (m.species_name == name) return m;
  throw InvalidModelError("no donor preset named '" + name + "'");
}

std::filesystem::path default_preset_path() {
  if (const char* env = std::getenv("SFG_PRESETS"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(SFG_SOURCE_DATA_DIR) / "donor_presets.json";
}

PresetCatalog parse_presets(const std::string& text) {
  const json::Document doc(text, "donor-model");
  const auto& root = doc.root();
  doc.check_keys(root, "", {"format_version", "description", "species", "references"},
                 {"format_version", "species"});
  PresetCatalog catalog;
  catalog.format_version = static_cast<int>(doc.integer(root, "", "format_version"));
  if (catalog.format_version != kPresetFormatVersion)
    doc.fail("/format_version", "unsupported preset format version " + std::to_string(catalog.format_version));
  const auto& species = root.at("species");
  if (!species.is_array()) doc.fail("/species", "expected an array");
  for (std::size_t i = 0; i < species.size(); ++i) {
    const std::string ptr = "/species/" + std::to_string(i);
    auto model = model_from_json(doc, species[i], ptr);
    for (const auto& existing : catalog.species)
      if (existing.species_name == model.species_name) doc.fail(ptr, "duplicate species '" + model.species_name + "'");
    catalog.species.push_back(std::move(model));
  }
  if (root.contains("references")) {
    const auto& refs = root.at("references");
    if (!refs.is_object()) doc.fail("/references", "expected an object");
    for (const auto& [key, value] : refs.items()) {
      if (!value.is_number()) doc.fail("/references/" + json::escape_pointer_token(key), "expected a number");
      catalog.references.emplace_back(key, value.get<double>());
    }
  }
  return catalog;
}

std::string dump_presets(const PresetCatalog& catalog) {
  json::Json root;
  root["format_version"] = catalog.format_version;
  root["species"] = json::Json::array();
  for (const auto& m : catalog.species) root["species"].push_back(to_json(m));
  root["references"] = json::Json::object();
  for (const auto& [key, value] : catalog.references) root["references"][key] = value;
  return root.dump(2) + "\n";
}

PresetCatalog load_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModelError("cannot open preset catalog " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_presets(buffer.str());
}

PresetCatalog load_presets() { return load_presets(default_preset_path()); }

}  // namespace sfg::donor
