#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sfg::donor {

enum class Role { qubit, control };

std::string to_string(Role role);
Role role_from_string(const std::string& text);

/// Hydrogenic effective-mass description of one dopant species.
/// Energies in eV as in the preset catalog; a* in angstrom.
struct DonorModel {
  std::string species_name;
  Role role = Role::control;
  double binding_energy = 0.0;      // R_eff, eV
  double central_cell_split = 0.0;  // eV, non-Coulombic part of R_eff
  double dielectric_constant = 5.7;
  double effective_bohr_radius = 0.0;  // a*, angstrom
  double radius_scale_factor = 1.0;
  double spin = 0.5;
  double t1 = 0.0;  // s, 0 when unknown
  double t2 = 0.0;  // s, 0 when unknown

  double coulombic_binding() const { return binding_energy - central_cell_split; }
  double effective_mass_ratio() const;
  /// Radius of the ground orbital actually used: a* scaled by radius_scale_factor.
  double orbital_radius() const { return effective_bohr_radius * radius_scale_factor; }

  friend bool operator==(const DonorModel&, const DonorModel&) = default;
};

/// Throws InvalidModelError when an invariant is violated.
void validate(const DonorModel& model);

/// Method 1: m*/m0 = eps^2 R_c / 13.6, a* = 0.529 (13.6 / eps) / R_c.
DonorModel model_from_ionization(double binding_ev, double dielectric, double central_cell_split_ev = 0.0);

/// Method 2 (Haynes rule): R_eff = exciton binding / factor.
DonorModel model_from_exciton(double exciton_binding_ev, double haynes_factor, double dielectric = 5.7,
                              double central_cell_split_ev = 0.0);

struct ZeemanCheck {
  double g_factor = 2.0;
  double field = 0.0;        // T
  double temperature = 0.0;  // K
  double ratio = 0.0;        // g muB B / kB T
  double polarization = 0.0;
};

ZeemanCheck zeeman_check(double g, double field_tesla, double temperature_kelvin);

/// Versioned preset catalog (JSON). Unknown keys are rejected.
struct PresetCatalog {
  int format_version = 0;
  std::vector<DonorModel> species;
  /// Named scalar reference values carried alongside the species (eV).
  std::vector<std::pair<std::string, double>> references;

  const DonorModel& find(const std::string& name) const;
};

inline constexpr int kPresetFormatVersion = 1;

/// SFG_PRESETS when set, otherwise the catalog shipped with the sources.
std::filesystem::path default_preset_path();

PresetCatalog load_presets(const std::filesystem::path& path);
PresetCatalog load_presets();
PresetCatalog parse_presets(const std::string& text);
std::string dump_presets(const PresetCatalog& catalog);

}  // namespace sfg::donor
