#pragma once

#include "sfg/spins.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sfg::configure {

/// EPR measurement model. Widths are FWHM; energies in meV.
struct EprModel {
  double linewidth = 0.05;
  double center = 0.116;        // g muB B at 1 T
  double offset_spread = 1.0;   // FWHM of the per-qubit offsets
  double min_separation = 0.5;  // minimum spacing between sampled qubit lines
};

/// Per-qubit EPR line positions: center + Gaussian offsets, redrawn until
/// all lines sit at least min_separation apart (deterministic under seed).
std::vector<double> sample_epr_positions(std::size_t n_qubits, const EprModel& model, std::uint64_t seed);

struct OpticalLine {
  std::string label;
  double energy = 0.0;  // meV
};

struct EprLine {
  std::string label;
  double position = 0.0;  // meV
};

/// What the simulated experiment sees. `couplings(c, q)` is the exchange of
/// excited control c with qubit q (meV).
struct ScanTruth {
  std::vector<OpticalLine> controls;
  std::vector<EprLine> qubits;
  Eigen::MatrixXd couplings;
  double homogeneous_width = 1.0;  // meV, FWHM of each optical line
};

struct ScanOptions {
  /// Optical samples per homogeneous width around each line.
  int samples_per_width = 8;
  /// Half-span of the dense optical window around each line, in widths.
  double window_widths = 1.0;
  /// EPR axis margin beyond the extreme line components, in linewidths.
  double epr_margin = 20.0;
};

struct ScanMap {
  std::vector<double> optical_axis;  // strictly increasing; row 0 excites nothing
  std::vector<double> epr_axis;      // strictly increasing
  Eigen::MatrixXd response;          // rows: optical, cols: EPR
  bool ground_truth_hidden = true;
  double homogeneous_width = 1.0;
  double epr_linewidth = 0.05;
  /// Observable reference data: unperturbed EPR lines and optical line positions.
  std::vector<EprLine> epr_lines;
  std::vector<OpticalLine> optical_lines;
};

/// A control counts as excited when |omega - E_c| <= delta_h / 2. Each qubit
/// line splits into components at sum_c (+-J_c/2) over excited controls,
/// equal weights, Lorentzian of the EPR linewidth, unit total height.
ScanMap simulate_scan(const ScanTruth& truth, const EprModel& epr, const ScanOptions& options = {});

/// Spectrum of one optical row, reusable for scan linearity checks.
Eigen::VectorXd epr_row(const ScanTruth& truth, double optical_energy, const std::vector<double>& epr_axis,
                        double linewidth);

void write_csv(std::ostream& out, const ScanMap& scan);

struct ControlHypothesis {
  std::string label;          // nearest optical line, or R<k> if none
  double optical_energy = 0.0;
  std::vector<std::string> qubits;
  std::vector<double> couplings;  // meV, 2 x fitted displacement
  bool ambiguous = false;
};

struct AdjacencyHypothesis {
  std::vector<ControlHypothesis> controls;

  const ControlHypothesis* find(const std::string& label) const;
};

/// Groups contiguous optical rows whose EPR lines move, fits each line's
/// doublet displacement d, and keeps lines with 2 d >= threshold.
AdjacencyHypothesis infer_adjacency(const ScanMap& scan, double detection_threshold);

/// Calibrates the gate of `control` from the inferred couplings, then plays
/// the calibrated duration on the true couplings. fidelity_to_target
/// compares the resulting qubit gate with the gate sfg_gate finds on the
/// truth; the residual reported is that of the played evolution.
spins::GateReport calibrate_gate_time(const ScanTruth& truth, const AdjacencyHypothesis& adjacency,
                                      const std::string& control, const spins::GateSearch& search = {});

}  // namespace sfg::configure
