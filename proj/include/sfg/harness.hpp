#pragma once

#include "sfg/configure.hpp"
#include "sfg/donor.hpp"
#include "sfg/integrals.hpp"
#include "sfg/json_document.hpp"
#include "sfg/lattice.hpp"
#include "sfg/spectra.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sfg::harness {

inline constexpr int kSchemaVersion = 1;

struct SpeciesEntry {
  std::optional<std::string> preset;  // catalog name when given by reference
  donor::DonorModel model;
};

struct ExplicitPlacement {
  std::string label;
  std::string species;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // angstrom
};

struct RandomPlacement {
  double concentration = 0.0;
  lattice::SpeciesMix mix;
  std::uint64_t seed = 0;
};

struct Thresholds {
  double detection = 1.0;          // meV
  double resolution_k = 1.5;
  double disentangle_bits = 1e-6;
};

struct Targets {
  int n_qubits = 0;
  int n_gates = 0;
};

struct ExchangeSettings {
  int gaussian_terms = 6;
  integrals::AxisMode p_axis = integrals::AxisMode::inter_center;
  Eigen::Vector3d fixed_axis = Eigen::Vector3d::UnitZ();
  /// Pairs farther apart are treated as uncoupled (angstrom).
  double cutoff = 40.0;
};

/// Optional separation curve carried by curve presets.
struct CurveSpec {
  enum class Kind { exchange, splitting };
  Kind kind = Kind::exchange;
  std::string control;
  std::string partner;  // exchange only
  double r_min = 4.0;
  double r_max = 30.0;
  double r_step = 0.5;

  std::vector<double> grid() const;
};

struct Scenario {
  int schema_version = kSchemaVersion;
  std::string name;
  std::vector<std::string> notes;
  lattice::LatticeSpec lattice;
  std::vector<SpeciesEntry> species;
  std::vector<ExplicitPlacement> placements;
  std::optional<RandomPlacement> random;
  /// base_transition_energy <= 0 means: take it from the first control species.
  spectra::SpectralModel spectral;
  configure::EprModel epr;
  Thresholds thresholds;
  Targets targets;
  std::uint64_t seed = 0;
  double excitation_energy = 600.0;  // meV
  ExchangeSettings exchange;
  bool run_configure = true;
  std::optional<CurveSpec> curve;

  const donor::DonorModel& species_model(const std::string& name) const;
};

/// Throws ScenarioError (no line) when cross-references are broken.
void validate(const Scenario& scenario);

Scenario parse_scenario(const std::string& text, const donor::PresetCatalog& catalog);
Scenario load_scenario(const std::filesystem::path& path, const donor::PresetCatalog& catalog);
json::Json scenario_to_json(const Scenario& scenario);
std::string dump_scenario(const Scenario& scenario);

/// Built-in presets: table1, fig2a, fig2b, fig3, shen-nv.
std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
Scenario preset(const std::string& name, const donor::PresetCatalog& catalog);

/// delta_h = 0.36 nm and a 5 nm spread at 637 nm, as FWHM energies.
spectra::SpectralModel shen_nv_spectral(double base_transition_energy);

// --- pipeline ---------------------------------------------------------------

struct Dopant {
  std::string label;
  std::string species;
  donor::Role role = donor::Role::control;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

struct CouplingRow {
  std::string control;
  std::string qubit;
  double separation = 0.0;
  std::optional<double> overlap;  // absent when read from an interpolation table
  double exchange = 0.0;          // excited control 2p x qubit 1s, meV
};

struct EffectiveCouplingRow {
  std::string qubit_a;
  std::string qubit_b;
  double j_eff = 0.0;           // meV
  double gate_time = 0.0;       // pi hbar / J_eff, ps
  std::optional<double> t2_ratio;  // gate_time / T2 of the slower qubit
};

struct GateRow {
  std::string control;
  std::vector<std::string> qubits;
  std::vector<double> couplings;
  std::vector<EffectiveCouplingRow> effective;
  std::string sfg_status;  // clean, no_clean_gate, not_applicable
  std::optional<spins::GateReport> sfg;
};

struct AdjacencyOutcome {
  bool attempted = false;
  bool recovered = false;
  configure::AdjacencyHypothesis inferred;
  std::map<std::string, std::vector<std::string>> truth;
};

struct FeasibilityReport {
  Scenario scenario;
  std::size_t site_count = 0;
  std::vector<Dopant> dopants;
  std::vector<CouplingRow> couplings;
  std::vector<spectra::TransitionLine> transitions;
  int resolvable_gate_count = 0;
  int usable_gate_count = 0;
  std::vector<GateRow> gates;
  AdjacencyOutcome adjacency;
  bool meets_targets = false;
};

/// Interpolation tables shared by repeated runs of one scenario template.
struct IntegralTables {
  std::map<std::string, spectra::TransferTable> transfer;                            // control species
  std::map<std::pair<std::string, std::string>, integrals::ExchangeTable> exchange;  // (control, qubit)
};

IntegralTables build_tables(const Scenario& scenario);

/// lattice -> integrals -> spectra -> spins -> configure. Explicit placements
/// use exact pair integrals; random placements use interpolated tables.
FeasibilityReport run_feasibility(const Scenario& scenario);
FeasibilityReport run_feasibility(const Scenario& scenario, const IntegralTables& tables);

/// Ordered JSON report. `generated_at` is the only non-deterministic field.
std::string report_json(const FeasibilityReport& report, const std::string& generated_at);
std::string utc_timestamp();

struct PatchStatistics {
  int n_patches = 0;
  std::uint64_t seed = 0;
  int target = 0;
  std::vector<int> usable_gates;         // per patch, in patch order
  std::vector<int> resolvable_gates;     // per patch
  std::vector<std::size_t> dopant_counts;
  std::map<int, int> histogram;          // usable gates -> patches
  double fraction_meeting_target = 0.0;
};

/// Repeats the pipeline (configure stage off) over random placements whose
/// seeds derive from `seed` and the patch index; runs concurrently, ordered output.
PatchStatistics patch_statistics(const Scenario& scenario_template, int n_patches, std::uint64_t seed);

std::string patch_statistics_json(const PatchStatistics& stats, const Scenario& scenario_template,
                                  const std::string& generated_at);

/// splitmix64 step used to derive independent stream seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace sfg::harness
