#pragma once

#include "sfg/integrals.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sfg::spectra {

/// One independent Gaussian disorder source; width is a FWHM in meV.
struct DisorderComponent {
  std::string name;
  double width = 0.0;
};

/// All widths are full widths at half maximum (meV).
struct SpectralModel {
  double base_transition_energy = 450.0;
  double homogeneous_width = 1.0;
  std::vector<DisorderComponent> disorder;
  double resolution_factor = 1.5;

  /// Quadrature sum of the disorder FWHMs.
  double inhomogeneous_width() const;
};

void validate(const SpectralModel& model);

struct ControlSite {
  std::string id;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // angstrom
};

struct TransitionLine {
  std::string gate_id;
  double energy = 0.0;  // meV
  double width = 0.0;   // meV
  std::vector<std::pair<std::string, double>> shift_breakdown;
};

/// |t|(R) between two excited controls, meV.
using TransferFunction = std::function<double(double)>;

/// TransferFunction interpolated from a transfer curve.
class TransferTable {
 public:
  TransferTable() = default;
  explicit TransferTable(const std::vector<integrals::TransitionPair>& curve);

  bool empty() const { return table_.empty(); }
  double operator()(double r) const { return table_(r); }

 private:
  integrals::ExchangeTable table_;
};

/// Base energy, plus for each control pair i < j a shift -|t_ij| on i and
/// +|t_ij| on j ("overlap"), plus one Gaussian draw per disorder component.
/// Throws DependencyError when two or more controls are given without `transfer`.
std::vector<TransitionLine> gate_transitions(const std::vector<ControlSite>& controls, const SpectralModel& model,
                                             const TransferFunction& transfer, std::uint64_t seed);

/// Greedy count after sorting: a line is kept when it lies at least
/// k * delta_h above the last kept line.
int resolvable_gate_count(std::vector<double> energies, double homogeneous_width, double k);
int resolvable_gate_count(const std::vector<TransitionLine>& lines, double homogeneous_width, double k);

/// Mean greedy count over `draws` sets of `n_lines` Gaussian lines of FWHM
/// `inhomogeneous_width`.
double mean_resolvable_count(int n_lines, double homogeneous_width, double inhomogeneous_width, double k,
                             int draws, std::uint64_t seed);

}  // namespace sfg::spectra
